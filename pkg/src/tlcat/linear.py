"""Formal Z[A, A^-1]-linear combinations of diagrams with loops evaluated to tau."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .category import ArityError, _compose_matchings, tensor, trace
from .laurent import ZERO, A, LaurentPoly
from .planar import Diagram, Matching, PlanarityError, generator_u, identity_diagram, is_planar

__all__ = [
    "KAUFFMAN_TAU",
    "TLMorphism",
    "lift",
    "lin_compose",
    "lin_tensor",
    "lin_add",
    "scalar_mul",
    "negate",
    "lin_trace",
    "check_tl_relations",
]

KAUFFMAN_TAU = -(A ** 2) - A ** -2


class TLMorphism:
    """A finite sum ``sum_i r_i d_i`` of loop-free planar diagrams ``dom -> cod``.

    ``tau`` is the scalar a closed loop evaluates to; it belongs to the
    ambient category, so morphisms with different ``tau`` never mix.
    """

    __slots__ = ("dom", "cod", "tau", "terms", "_hash")

    def __init__(
        self,
        dom: int,
        cod: int,
        tau: LaurentPoly,
        terms: Mapping[Matching, LaurentPoly] | Iterable[tuple[Matching, LaurentPoly]] = (),
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Matching, LaurentPoly] = {}
        for f, r in items:
            if (f.n, f.m) != (dom, cod):
                raise ArityError(f"term {f!r} does not have arity {dom}->{cod}")
            if not is_planar(f):
                raise PlanarityError(f"term {f!r} is not planar")
            collected[f] = collected.get(f, ZERO) + LaurentPoly.coerce(r)
        self.dom = dom
        self.cod = cod
        self.tau = LaurentPoly.coerce(tau)
        self.terms: dict[Matching, LaurentPoly] = {
            f: collected[f] for f in sorted(collected, key=Matching.sort_key) if collected[f]
        }
        self._hash = hash((dom, cod, self.tau, tuple(self.terms.items())))

    @classmethod
    def zero(cls, dom: int, cod: int, tau: LaurentPoly) -> TLMorphism:
        return cls(dom, cod, tau)

    @classmethod
    def identity(cls, n: int, tau: LaurentPoly) -> TLMorphism:
        return lift(identity_diagram(n), tau)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, f: Matching | Diagram) -> LaurentPoly:
        if isinstance(f, Diagram):
            return self.terms.get(f.matching, ZERO) * self.tau ** f.loops
        return self.terms.get(f, ZERO)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TLMorphism):
            return NotImplemented
        return (self.dom, self.cod, self.tau, self.terms) == (
            other.dom,
            other.cod,
            other.tau,
            other.terms,
        )

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: TLMorphism) -> TLMorphism:
        return lin_add(self, other)

    def __neg__(self) -> TLMorphism:
        return negate(self)

    def __sub__(self, other: TLMorphism) -> TLMorphism:
        return lin_add(self, negate(other))

    def __rmul__(self, r) -> TLMorphism:
        return scalar_mul(r, self)

    def __matmul__(self, other: TLMorphism) -> TLMorphism:
        """``x @ y`` stacks ``x`` above ``y``, like :func:`lin_compose`."""
        return lin_compose(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for f, r in self.terms.items():
            pairs = ",".join(f"{a}-{b}" for a, b in f.pairs)
            parts.append(f"({r})*[{pairs}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TLMorphism({self.dom}->{self.cod}, tau={self.tau}, {self})"


def lift(d: Diagram, tau: LaurentPoly) -> TLMorphism:
    """The single term ``tau^loops * d``."""
    return TLMorphism(d.dom, d.cod, tau, {d.matching: LaurentPoly.coerce(tau) ** d.loops})


def _same_tau(x: TLMorphism, y: TLMorphism) -> None:
    if x.tau != y.tau:
        raise ValueError(f"loop values differ: {x.tau} vs {y.tau}")


def lin_compose(x: TLMorphism, y: TLMorphism) -> TLMorphism:
    """Bilinear extension of stacking ``x`` above ``y``."""
    _same_tau(x, y)
    if x.cod != y.dom:
        raise ArityError(f"cannot stack {x.dom}->{x.cod} above {y.dom}->{y.cod}")
    powers: dict[int, LaurentPoly] = {}
    out: dict[Matching, LaurentPoly] = {}
    for f, r in x.terms.items():
        for g, s in y.terms.items():
            h, z = _compose_matchings(f, g)
            if z not in powers:
                powers[z] = x.tau ** z
            out[h] = out.get(h, ZERO) + r * s * powers[z]
    return TLMorphism(x.dom, y.cod, x.tau, out)


def lin_tensor(x: TLMorphism, y: TLMorphism) -> TLMorphism:
    _same_tau(x, y)
    out: dict[Matching, LaurentPoly] = {}
    for f, r in x.terms.items():
        for g, s in y.terms.items():
            h = tensor(Diagram(0, f, check=False), Diagram(0, g, check=False)).matching
            out[h] = out.get(h, ZERO) + r * s
    return TLMorphism(x.dom + y.dom, x.cod + y.cod, x.tau, out)


def lin_add(x: TLMorphism, y: TLMorphism) -> TLMorphism:
    _same_tau(x, y)
    if (x.dom, x.cod) != (y.dom, y.cod):
        raise ArityError(f"cannot add {x.dom}->{x.cod} and {y.dom}->{y.cod}")
    return TLMorphism(x.dom, x.cod, x.tau, list(x.terms.items()) + list(y.terms.items()))


def scalar_mul(r, x: TLMorphism) -> TLMorphism:
    r = LaurentPoly.coerce(r)
    return TLMorphism(x.dom, x.cod, x.tau, {f: r * s for f, s in x.terms.items()})


def negate(x: TLMorphism) -> TLMorphism:
    return scalar_mul(-1, x)


@lru_cache(maxsize=1 << 14)
def _closure_loops(f: Matching) -> int:
    return trace(Diagram(0, f, check=False))


def lin_trace(x: TLMorphism) -> LaurentPoly:
    """``sum_i r_i tau^trace(d_i)``."""
    if x.dom != x.cod:
        raise ArityError(f"trace of a non-endomorphism {x.dom}->{x.cod}")
    total = ZERO
    for f, r in x.terms.items():
        total = total + r * x.tau ** _closure_loops(f)
    return total


def check_tl_relations(n: int, tau: LaurentPoly) -> bool:
    """Check the three defining relations of TL_n among the lifted generators."""
    if n < 1:
        raise ValueError("n must be at least 1")
    u = [None] + [lift(generator_u(n, i), tau) for i in range(1, n)]
    tau = LaurentPoly.coerce(tau)
    for i in range(1, n):
        if lin_compose(u[i], u[i]) != scalar_mul(tau, u[i]):
            return False
        for j in range(1, n):
            if abs(i - j) == 1:
                if lin_compose(lin_compose(u[i], u[j]), u[i]) != u[i]:
                    return False
            elif abs(i - j) > 1:
                if lin_compose(u[i], u[j]) != lin_compose(u[j], u[i]):
                    return False
    return True

