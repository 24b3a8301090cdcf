"""Fixed-point-free involutions on two rows of dots, and the planar ones.

A diagram ``n -> m`` joins ``n`` top dots and ``m`` bottom dots pairwise.
Endpoints are 1-based: ``Endpoint(Row.TOP, i)`` is written ``i`` and
``Endpoint(Row.BOTTOM, j)`` is ``j'``.

Internally a :class:`Matching` is a tuple ``perm`` of length ``n + m`` over
integer codes: top ``i`` has code ``i - 1`` and bottom ``j`` has code
``n + j - 1``.  ``perm[x]`` is the code of the partner of ``x``.
"""

from __future__ import annotations

import enum
import os
import random
import re
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "Row",
    "Endpoint",
    "Matching",
    "Diagram",
    "MatchingError",
    "PlanarityError",
    "make_matching",
    "is_planar",
    "planarity_via_transpose",
    "generator_u",
    "identity_diagram",
    "unit_eta",
    "counit_eps",
    "enumerate_planar",
    "all_involutions",
    "random_matching",
    "random_diagram",
    "catalan",
    "enumeration_bound",
    "parse_diagram",
    "format_diagram",
]

DEFAULT_ENUMERATION_BOUND = 16
BOUND_ENV_VAR = "TLCAT_ENUM_BOUND"


class MatchingError(ValueError):
    """Invalid endpoint pairing."""


class PlanarityError(MatchingError):
    """A pairing that is a valid involution but not planar."""


class Row(enum.IntEnum):
    TOP = 0
    BOTTOM = 1


class Endpoint(NamedTuple):
    row: Row
    index: int

    def __str__(self) -> str:
        return f"{self.index}'" if self.row is Row.BOTTOM else str(self.index)


def top(i: int) -> Endpoint:
    return Endpoint(Row.TOP, i)


def bottom(j: int) -> Endpoint:
    return Endpoint(Row.BOTTOM, j)


class Matching:
    """A fixed-point-free involution on the endpoints of ``N(n, m)``.

    Matchings need not be planar; :class:`Diagram` is where planarity is
    enforced.  Use :func:`make_matching` to build one from endpoint pairs.
    """

    __slots__ = ("n", "m", "perm", "_hash")

    def __init__(self, n: int, m: int, perm: tuple[int, ...]):
        # trusted constructor: perm must already be a valid involution
        self.n = n
        self.m = m
        self.perm = perm
        self._hash = hash((n, m, perm))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.perm == other.perm

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Matching) -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.n, self.m, self.pairs)

    def endpoint(self, code: int) -> Endpoint:
        if code < self.n:
            return Endpoint(Row.TOP, code + 1)
        return Endpoint(Row.BOTTOM, code - self.n + 1)

    def code(self, e: Endpoint) -> int:
        return e.index - 1 if e.row is Row.TOP else self.n + e.index - 1

    def partner(self, e: Endpoint) -> Endpoint:
        return self.endpoint(self.perm[self.code(e)])

    @property
    def pairs(self) -> tuple[tuple[Endpoint, Endpoint], ...]:
        """Canonical pair list: each pair ordered, pairs sorted row-then-index."""
        return tuple(
            (self.endpoint(x), self.endpoint(y))
            for x, y in enumerate(self.perm)
            if x < y
        )

    def cups(self) -> list[tuple[int, int]]:
        """Top-top arcs as ``(i, j)`` index pairs with ``i < j``."""
        n = self.n
        return [(x + 1, y + 1) for x, y in enumerate(self.perm[:n]) if x < y < n]

    def caps(self) -> list[tuple[int, int]]:
        """Bottom-bottom arcs as ``(i, j)`` index pairs with ``i < j``."""
        n = self.n
        return [
            (x - n + 1, y - n + 1)
            for x, y in enumerate(self.perm)
            if x >= n and y > x
        ]

    def through_lines(self) -> list[tuple[int, int]]:
        """Top-bottom arcs as ``(top index, bottom index)``, sorted by top."""
        n = self.n
        return [(x + 1, y - n + 1) for x, y in enumerate(self.perm[:n]) if y >= n]

    def __repr__(self) -> str:
        body = ",".join(f"{a}-{b}" for a, b in self.pairs)
        return f"Matching({self.n}, {self.m}, [{body}])"


def make_matching(
    n: int, m: int, pairs: Iterable[tuple[Endpoint | tuple, Endpoint | tuple]]
) -> Matching:
    """Validate endpoint pairs and build the canonical :class:`Matching`.

    Endpoints may be :class:`Endpoint` values or plain ``(row, index)``
    tuples.  Raises :class:`MatchingError` naming the offending endpoint.
    """
    if n < 0 or m < 0:
        raise MatchingError(f"negative arity ({n}, {m})")
    if (n + m) % 2:
        raise MatchingError(f"odd number of endpoints: {n} + {m}")
    perm: list[int | None] = [None] * (n + m)

    def encode(e) -> int:
        row, index = e
        row = Row(row)
        limit = n if row is Row.TOP else m
        end = Endpoint(row, index)
        if not isinstance(index, int) or not 1 <= index <= limit:
            raise MatchingError(f"endpoint {end} out of range for ({n}, {m})")
        return index - 1 if row is Row.TOP else n + index - 1

    for a, b in pairs:
        x, y = encode(a), encode(b)
        if x == y:
            raise MatchingError(f"self-pair at endpoint {Endpoint(Row(a[0]), a[1])}")
        for code in (x, y):
            if perm[code] is not None:
                e = Endpoint(Row.TOP, code + 1) if code < n else Endpoint(Row.BOTTOM, code - n + 1)
                raise MatchingError(f"endpoint {e} occurs in more than one pair")
        perm[x], perm[y] = y, x
    for code, p in enumerate(perm):
        if p is None:
            e = Endpoint(Row.TOP, code + 1) if code < n else Endpoint(Row.BOTTOM, code - n + 1)
            raise MatchingError(f"endpoint {e} is missing from the pairing")
    return Matching(n, m, tuple(perm))


# -- planarity ---------------------------------------------------------------

def _planar_perm(perm: tuple[int, ...], n: int) -> bool:
    # (PL1) and (PL2) over [n] (+) [m]; x < y only within one row.
    size = len(perm)
    for i in range(size):
        fi = perm[i]
        i_top = i < n
        if (fi < n) == i_top:
            # PL1: i < j < f(i) forces i < f(j) < f(i)
            if fi > i:
                for j in range(i + 1, fi):
                    fj = perm[j]
                    if not i < fj < fi:
                        return False
        else:
            # PL2: f(i) # i < j # f(j) forces f(i) < f(j)
            end = n if i_top else size
            for j in range(i + 1, end):
                fj = perm[j]
                if (fj < n) != i_top and not fi < fj:
                    return False
    return True


def _transpose_perm(perm: tuple[int, ...], n: int) -> bool:
    # Balanced-parentheses scan over the linear order [n]^op <| [m].
    size = len(perm)
    order = list(range(n - 1, -1, -1)) + list(range(n, size))
    position = [0] * size
    for pos, code in enumerate(order):
        position[code] = pos
    stack: list[int] = []
    for code in order:
        other = perm[code]
        if position[other] > position[code]:
            stack.append(code)
        elif not stack or stack.pop() != other:
            return False
    return not stack


def is_planar(f: Matching) -> bool:
    """True iff ``f`` satisfies (PL1) and (PL2) on ``[n] (+) [m]``."""
    return _planar_perm(f.perm, f.n)


def planarity_via_transpose(f: Matching) -> bool:
    """Planarity read off the transposed linear order ``[n]^op <| [m]``.

    The top row is rotated to the left of the bottom row; ``f`` is then
    planar exactly when its arcs form a well-nested parenthesis string.
    """
    return _transpose_perm(f.perm, f.n)


# -- diagrams ------------------------------------------------------------------

class Diagram:
    """An arrow ``dom -> cod``: a loop count and a planar matching."""

    __slots__ = ("loops", "matching", "_hash")

    def __init__(self, loops: int, matching: Matching, *, check: bool = True):
        if loops < 0:
            raise ValueError(f"negative loop count {loops}")
        if check and not _planar_perm(matching.perm, matching.n):
            raise PlanarityError(f"non-planar matching {matching!r}")
        self.loops = loops
        self.matching = matching
        self._hash = hash((loops, matching))

    @property
    def dom(self) -> int:
        return self.matching.n

    @property
    def cod(self) -> int:
        return self.matching.m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.loops == other.loops and self.matching == other.matching

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Diagram) -> bool:
        return (self.matching.sort_key(), self.loops) < (other.matching.sort_key(), other.loops)

    def with_loops(self, loops: int) -> Diagram:
        return Diagram(loops, self.matching, check=False)

    def __repr__(self) -> str:
        return f"Diagram({format_diagram(self)!r})"

    def __str__(self) -> str:
        return format_diagram(self)


def diagram(n: int, m: int, pairs, loops: int = 0) -> Diagram:
    """Shorthand: validate pairs and wrap them as a planar :class:`Diagram`."""
    return Diagram(loops, make_matching(n, m, pairs))


def generator_u(n: int, i: int) -> Diagram:
    """``U_i`` on ``n`` strands: cup ``(i, i+1)``, cap ``(i', (i+1)')``."""
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError(f"generator U_{i} does not exist on {n} strands")
    perm = list(range(n, 2 * n)) + list(range(n))
    a, b = i - 1, i
    perm[a], perm[b] = b, a
    perm[n + a], perm[n + b] = n + b, n + a
    return Diagram(0, Matching(n, n, tuple(perm)), check=False)


def identity_diagram(n: int) -> Diagram:
    """Through lines ``i -- i'``; the twist map, not the identity function."""
    return Diagram(0, Matching(n, n, tuple(range(n, 2 * n)) + tuple(range(n))), check=False)


def unit_eta(n: int) -> Diagram:
    """``0 -> 2n``: nested caps pairing ``i'`` with ``(2n + 1 - i)'``."""
    return Diagram(0, Matching(0, 2 * n, tuple(range(2 * n - 1, -1, -1))), check=False)


def counit_eps(n: int) -> Diagram:
    """``2n -> 0``: nested cups, the mirror image of :func:`unit_eta`."""
    return Diagram(0, Matching(2 * n, 0, tuple(range(2 * n - 1, -1, -1))), check=False)


# -- enumeration ---------------------------------------------------------------

def enumeration_bound() -> int:
    raw = os.environ.get(BOUND_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_BOUND
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BOUND_ENV_VAR} must be an integer, got {raw!r}") from None


def catalan(k: int) -> int:
    from math import comb

    return comb(2 * k, k) // (k + 1)


def _noncrossing(size: int) -> Iterator[list[int]]:
    """All noncrossing perfect matchings of ``0..size-1`` as partner lists."""
    if size == 0:
        yield []
        return
    for k in range(1, size, 2):
        for inner in _noncrossing(k - 1):
            for outer in _noncrossing(size - k - 1):
                match = [0] * size
                match[0], match[k] = k, 0
                for a, b in enumerate(inner):
                    match[a + 1] = b + 1
                for a, b in enumerate(outer):
                    match[a + k + 1] = b + k + 1
                yield match


def _from_linear(linear: list[int], n: int) -> tuple[int, ...]:
    # positions of [n]^op <| [m] back to endpoint codes
    size = len(linear)
    code = [n - 1 - p if p < n else p for p in range(size)]
    perm = [0] * size
    for p, q in enumerate(linear):
        perm[code[p]] = code[q]
    return tuple(perm)


def enumerate_planar(n: int, m: int, bound: int | None = None) -> list[Matching]:
    """Every planar matching ``n -> m``, sorted by canonical pair list."""
    limit = enumeration_bound() if bound is None else bound
    if n + m > limit:
        raise ValueError(f"n + m = {n + m} exceeds the enumeration bound {limit}")
    if n < 0 or m < 0 or (n + m) % 2:
        return []
    found = [Matching(n, m, _from_linear(lin, n)) for lin in _noncrossing(n + m)]
    return sorted(found)


def all_involutions(n: int, m: int) -> Iterator[Matching]:
    """Every fixed-point-free involution of ``N(n, m)``, planar or not."""
    for perm in _all_perms(n + m):
        yield Matching(n, m, perm)


def _all_perms(size: int) -> Iterator[tuple[int, ...]]:
    if size % 2:
        return
    perm = [-1] * size

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        while start < size and perm[start] != -1:
            start += 1
        if start == size:
            yield tuple(perm)
            return
        for other in range(start + 1, size):
            if perm[other] == -1:
                perm[start], perm[other] = other, start
                yield from rec(start + 1)
                perm[start] = perm[other] = -1

    yield from rec(0)


def random_matching(n: int, m: int, rng: random.Random) -> Matching:
    """A uniformly random planar matching ``n -> m`` (cycle lemma)."""
    size = n + m
    if size % 2:
        raise MatchingError(f"odd number of endpoints: {n} + {m}")
    half = size // 2
    steps = [1] * half + [-1] * (half + 1)
    rng.shuffle(steps)
    # rotate so that the walk stays nonnegative until the final -1
    height, low, low_at = 0, 0, 0
    for k, s in enumerate(steps):
        height += s
        if height < low:
            low, low_at = height, k + 1
    steps = steps[low_at:] + steps[:low_at]
    steps = steps[:-1]
    linear = [0] * size
    stack: list[int] = []
    for p, s in enumerate(steps):
        if s == 1:
            stack.append(p)
        else:
            q = stack.pop()
            linear[p], linear[q] = q, p
    return Matching(n, m, _from_linear(linear, n))


def random_diagram(n: int, m: int, rng: random.Random, max_loops: int = 0) -> Diagram:
    loops = rng.randint(0, max_loops) if max_loops else 0
    return Diagram(loops, random_matching(n, m, rng), check=False)


# -- text form -----------------------------------------------------------------

def format_diagram(d: Diagram) -> str:
    body = ",".join(f"{a}-{b}" for a, b in d.matching.pairs)
    return f"tl1 dom={d.dom} cod={d.cod} loops={d.loops} pairs={body}"


def _parse_endpoint(token: str) -> Endpoint:
    token = token.strip()
    primed = token.endswith("'")
    digits = token[:-1] if primed else token
    if not digits.strip().isdigit():
        raise MatchingError(f"bad endpoint {token!r}")
    return Endpoint(Row.BOTTOM if primed else Row.TOP, int(digits))


def parse_diagram(text: str, check: bool = True) -> Diagram:
    """Parse ``tl1 dom=<n> cod=<m> loops=<k> pairs=<a>-<b>,...``.

    With ``check=False`` a crossing matching is accepted, which lets
    callers ask whether it is planar.
    """
    src = re.sub(r"\s*([=,\-])\s*", r"\1", text.strip())
    fields = src.split()
    if not fields or fields[0] != "tl1":
        raise MatchingError(f"expected 'tl1' header in {text!r}")
    values: dict[str, str] = {}
    for field in fields[1:]:
        key, sep, value = field.partition("=")
        if not sep or key not in ("dom", "cod", "loops", "pairs") or key in values:
            raise MatchingError(f"unexpected field {field!r}")
        values[key] = value
    if "pairs" not in values:
        values["pairs"] = ""
    for key in ("dom", "cod", "loops"):
        if not values.get(key, "").isdigit():
            raise MatchingError(f"field {key} missing or not a natural number")
    pairs = []
    for item in filter(None, values["pairs"].split(",")):
        a, sep, b = item.partition("-")
        if not sep:
            raise MatchingError(f"bad pair {item!r}")
        pairs.append((_parse_endpoint(a), _parse_endpoint(b)))
    matching = make_matching(int(values["dom"]), int(values["cod"]), pairs)
    return Diagram(int(values["loops"]), matching, check=check)
