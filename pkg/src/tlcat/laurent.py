"""Exact Laurent polynomials in one indeterminate with integer coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

__all__ = ["LaurentPoly", "A", "ONE", "ZERO", "parse_laurent", "format_in_t"]

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """A sparse map from integer exponents of ``A`` to nonzero integers.

    >>> (A + A**-1) * (A - A**-1)
    LaurentPoly('A^2 - A^-2')
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError(f"exponents and coefficients must be int, got {e!r}: {c!r}")
            if c:
                clean[e] = c
        self.terms: dict[int, int] = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict[int, int]) -> LaurentPoly:
        # caller guarantees int keys and values; zeros are dropped here
        out = object.__new__(cls)
        out.terms = {e: c for e, c in terms.items() if c}
        out._hash = None
        return out

    @classmethod
    def monomial(cls, coeff: int, exp: int = 0) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, value: Scalar) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls({0: value})
        raise TypeError(f"cannot use {value!r} as a Laurent polynomial")

    # -- ring operations --

    def __add__(self, other: Scalar) -> LaurentPoly:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._trusted({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Scalar) -> LaurentPoly:
        try:
            return self + (-LaurentPoly.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other: Scalar) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> LaurentPoly:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._trusted(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_unit():
                raise ValueError(f"{self} is not a unit; negative powers undefined")
            # (c A^e)^k with c = +-1 is c^|k| A^(ek)
            ((e, c),) = self.terms.items()
            return LaurentPoly({e * k: c ** -k})
        return _power(self, k)

    def is_unit(self) -> bool:
        """Units of Z[A, A^-1] are exactly the monomials with coefficient +-1."""
        return len(self.terms) == 1 and next(iter(self.terms.values())) in (1, -1)

    # -- comparison and inspection --

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, exp: int) -> int:
        return self.terms.get(exp, 0)

    def items(self) -> list[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs in descending exponent order."""
        return sorted(self.terms.items(), reverse=True)

    @property
    def max_exp(self) -> int | None:
        return max(self.terms) if self.terms else None

    @property
    def min_exp(self) -> int | None:
        return min(self.terms) if self.terms else None

    # -- substitution --

    def substitute(self, value):
        """Substitute for ``A``.

        ``value`` may be another :class:`LaurentPoly` (``A**-1`` mirrors,
        ``A**k`` rescales exponents) or a number, in which case the result
        is exact for ints and :class:`~fractions.Fraction` and otherwise is
        whatever the number type gives.
        """
        if isinstance(value, LaurentPoly):
            if len(value.terms) == 1 and next(iter(value.terms.values())) == 1:
                (k,) = value.terms
                return LaurentPoly({e * k: c for e, c in self.terms.items()})
            out = ZERO
            for e, c in self.terms.items():
                out = out + c * (value ** e)
            return out
        if isinstance(value, int) and not isinstance(value, bool):
            value = Fraction(value)
        total = value * 0
        for e, c in self.terms.items():
            total += c * value ** e
        return total

    def mirror(self) -> LaurentPoly:
        """``A -> A^-1``."""
        return self.substitute(A ** -1)

    # -- text --

    def __str__(self) -> str:
        return _format(self.terms, "A")

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


@lru_cache(maxsize=4096)
def _power(p: LaurentPoly, k: int) -> LaurentPoly:
    # loop values get raised to the same small powers over and over
    out = ONE
    base = p
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


def _format(terms: Mapping, var: str, exp_text=str) -> str:
    if not terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(sorted(terms.items(), reverse=True)):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = var if e == 1 else f"{var}^{exp_text(e)}"
            body = power if mag == 1 else f"{mag}*{power}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:(\d+)\s*\*?\s*)?
        (?:(A)(?:\s*\^\s*(?:\{\s*([+-]?\d+)\s*\}|\(\s*([+-]?\d+)\s*\)|([+-]?\d+)))?)?
        \s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse ``c*A^e`` monomials joined by ``+``/``-``; ``*`` and ``1`` optional."""
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    pos = 0
    out = ZERO
    first = True
    while pos < len(src):
        match = _TERM.match(src, pos)
        sign, digits, var = match.group(1), match.group(2), match.group(3)
        exp_text = match.group(4) or match.group(5) or match.group(6)
        if match.end() == pos or (digits is None and var is None):
            raise ValueError(f"cannot parse polynomial {text!r} at column {pos + 1}")
        if sign is None and not first:
            raise ValueError(f"missing + or - before column {pos + 1} in {text!r}")
        coeff = int(digits) if digits is not None else 1
        exp = (int(exp_text) if exp_text is not None else 1) if var else 0
        out = out + LaurentPoly({exp: -coeff if sign == "-" else coeff})
        pos = match.end()
        first = False
    return out


def format_in_t(p: LaurentPoly) -> str:
    """Re-express ``p`` in ``t = A^-4``; exponents may be half-integers."""
    terms = {}
    for e, c in p.terms.items():
        if e % 2:
            raise ValueError(f"{p} has odd powers of A; not a polynomial in t^(1/2)")
        terms[Fraction(-e, 4)] = c

    def exp_text(q: Fraction) -> str:
        return str(q.numerator) if q.denominator == 1 else f"({q})"

    return _format(terms, "t", exp_text)


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
A = LaurentPoly({1: 1})
