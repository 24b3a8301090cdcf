"""The category TL: composition by the execution formula, and its structure.

``compose(f, g)`` is diagrammatic order: ``f`` is drawn above ``g`` and the
bottom row of ``f`` is glued to the top row of ``g``.  In categorical
notation this is ``g o f``; it is also the monoid product ``f g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .planar import (
    Diagram,
    Matching,
    MatchingError,
    PlanarityError,
    _planar_perm,
    counit_eps,
    generator_u,
    identity_diagram,
    unit_eta,
)

__all__ = [
    "ArityError",
    "NotIdempotentError",
    "FourBlockDecomposition",
    "GeneratorWord",
    "decompose",
    "compose",
    "compose_all",
    "compose_oracle",
    "cycle_count",
    "tensor",
    "tensor_all",
    "dagger",
    "conjugate",
    "dual",
    "trace",
    "name",
    "coname",
    "unname",
    "is_monic",
    "is_epic",
    "epi_mono_factorize",
    "split_idempotent",
    "factor_into_generators",
    "evaluate_word",
    "parse_word",
    "left_wave",
    "right_wave",
]


class ArityError(ValueError):
    """Arrows whose domains and codomains do not line up."""


class NotIdempotentError(ValueError):
    pass


Relation = frozenset  # of (int, int) pairs


# -- relation algebra ----------------------------------------------------------

def rel_compose(r: Relation, s: Relation) -> Relation:
    """``r ; s``: first ``r``, then ``s``."""
    by_source: dict[int, list[int]] = {}
    for y, z in s:
        by_source.setdefault(y, []).append(z)
    return frozenset((x, z) for x, y in r for z in by_source.get(y, ()))


def rel_converse(r: Relation) -> Relation:
    return frozenset((y, x) for x, y in r)


def rel_identity(carrier: Iterable[int]) -> Relation:
    return frozenset((x, x) for x in carrier)


def rel_plus(r: Relation) -> Relation:
    """Transitive closure, by iterated composition to a fixpoint."""
    closure = r
    power = r
    while True:
        power = rel_compose(power, r)
        if power <= closure:
            return closure
        closure = closure | power


def rel_star(r: Relation, carrier: Iterable[int]) -> Relation:
    return rel_identity(carrier) | rel_plus(r)


# -- four-block decomposition --------------------------------------------------

@dataclass(frozen=True)
class FourBlockDecomposition:
    """The involution of an arrow ``n -> m`` split by source and target row.

    Indices are 1-based within their own row.  ``cups`` is ``f_nn``,
    ``caps`` is ``f_mm``, ``through_down`` is ``f_nm`` and ``through_up``
    is ``f_mn``.
    """

    n: int
    m: int
    cups: Relation
    through_down: Relation
    through_up: Relation
    caps: Relation


def decompose(f: Matching) -> FourBlockDecomposition:
    n = f.n
    nn, nm, mn, mm = set(), set(), set(), set()
    for x, y in enumerate(f.perm):
        if x < n:
            (nn if y < n else nm).add((x + 1, y + 1 if y < n else y - n + 1))
        else:
            (mn if y < n else mm).add((x - n + 1, y + 1 if y < n else y - n + 1))
    return FourBlockDecomposition(
        n, f.m, frozenset(nn), frozenset(nm), frozenset(mn), frozenset(mm)
    )


def _check_composable(f: Diagram, g: Diagram) -> None:
    if f.cod != g.dom:
        raise ArityError(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")


def _execute(f: Matching, g: Matching) -> Matching:
    fb, gb = decompose(f), decompose(g)
    middle = range(1, f.m + 1)
    fg = rel_star(rel_compose(fb.caps, gb.cups), middle)
    gf = rel_star(rel_compose(gb.cups, fb.caps), middle)
    theta_nn = fb.cups | rel_compose(
        rel_compose(rel_compose(fb.through_down, gb.cups), fg), fb.through_up
    )
    theta_np = rel_compose(rel_compose(fb.through_down, gf), gb.through_down)
    theta_pn = rel_compose(rel_compose(gb.through_up, fg), fb.through_up)
    theta_pp = gb.caps | rel_compose(
        rel_compose(rel_compose(gb.through_up, fb.caps), gf), gb.through_down
    )
    n, p = f.n, g.m
    perm: list[int | None] = [None] * (n + p)
    for block, src_off, dst_off in (
        (theta_nn, 0, 0),
        (theta_np, 0, n),
        (theta_pn, n, 0),
        (theta_pp, n, n),
    ):
        for x, y in block:
            code = src_off + x - 1
            if perm[code] is not None:
                raise AssertionError("execution formula produced a non-function")
            perm[code] = dst_off + y - 1
    return Matching(n, p, tuple(perm))


def _cyclic_components(f: Matching, g: Matching) -> int:
    fb, gb = decompose(f), decompose(g)
    cyc = rel_compose(fb.caps, gb.cups)
    cyclic = {x for x, y in rel_plus(cyc) if x == y}
    # union-find over f_mm u g_mm restricted to cyclic elements
    parent = {x: x for x in cyclic}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in fb.caps | gb.cups:
        if x in parent and y in parent:
            parent[find(x)] = find(y)
    return sum(1 for x in cyclic if find(x) == x)


def cycle_orbits(f: Diagram, g: Diagram) -> int:
    """Literal number of distinct cycles of ``Cyc(f, g) = f_mm ; g_mm``.

    Every closed loop through the middle row contributes two orbits, so
    this is twice :func:`cycle_count`.
    """
    _check_composable(f, g)
    cyc = rel_compose(decompose(f.matching).caps, decompose(g.matching).cups)
    cyclic = {x for x, y in rel_plus(cyc) if x == y}
    step = dict(cyc)
    seen: set[int] = set()
    orbits = 0
    for x in sorted(cyclic):
        if x in seen:
            continue
        orbits += 1
        while x not in seen:
            seen.add(x)
            x = step[x]
    return orbits


@lru_cache(maxsize=1 << 16)
def _compose_matchings(f: Matching, g: Matching) -> tuple[Matching, int]:
    theta = _execute(f, g)
    if __debug__ and not _planar_perm(theta.perm, theta.n):
        raise AssertionError("composite of planar matchings is not planar")
    return theta, _cyclic_components(f, g)


def cycle_count(f: Diagram, g: Diagram) -> int:
    """Closed loops formed where ``f``'s bottom row meets ``g``'s top row."""
    _check_composable(f, g)
    return _compose_matchings(f.matching, g.matching)[1]


def compose(f: Diagram, g: Diagram) -> Diagram:
    """Stack ``f`` above ``g`` (categorically ``g o f``)."""
    _check_composable(f, g)
    theta, z = _compose_matchings(f.matching, g.matching)
    return Diagram(f.loops + g.loops + z, theta, check=False)


def compose_all(first: Diagram, *rest: Diagram) -> Diagram:
    out = first
    for d in rest:
        out = compose(out, d)
    return out


def compose_oracle(f: Diagram, g: Diagram) -> Diagram:
    """Composition by walking paths through the glued middle row."""
    _check_composable(f, g)
    n, m, p = f.dom, f.cod, g.cod
    # vertices: ('t', i) outer top, ('b', k) outer bottom, ('m', j) middle
    adj: dict[tuple, list[tuple]] = {}

    def link(a: tuple, b: tuple) -> None:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    def f_vertex(code: int) -> tuple:
        return ("t", code + 1) if code < n else ("m", code - n + 1)

    def g_vertex(code: int) -> tuple:
        return ("m", code + 1) if code < m else ("b", code - m + 1)

    for x, y in enumerate(f.matching.perm):
        if x < y:
            link(f_vertex(x), f_vertex(y))
    for x, y in enumerate(g.matching.perm):
        if x < y:
            link(g_vertex(x), g_vertex(y))

    visited: set[tuple] = set()
    pairs = []
    for start in [("t", i) for i in range(1, n + 1)] + [("b", k) for k in range(1, p + 1)]:
        if start in visited:
            continue
        prev, here = None, start
        visited.add(here)
        while True:
            nxt = [v for v in adj[here] if v != prev] if len(adj[here]) > 1 else adj[here]
            prev, here = here, nxt[0]
            visited.add(here)
            if here[0] != "m":
                break
        pairs.append((start, here))

    loops = 0
    for j in range(1, m + 1):
        v = ("m", j)
        if v in visited:
            continue
        loops += 1
        stack = [v]
        while stack:
            u = stack.pop()
            if u in visited:
                continue
            visited.add(u)
            stack.extend(adj[u])

    perm = [0] * (n + p)

    def code(v: tuple) -> int:
        return v[1] - 1 if v[0] == "t" else n + v[1] - 1

    for a, b in pairs:
        perm[code(a)], perm[code(b)] = code(b), code(a)
    return Diagram(f.loops + g.loops + loops, Matching(n, p, tuple(perm)))


# -- monoidal and dagger structure ---------------------------------------------

def _relabel(f: Matching, n: int, m: int, mapping: list[int]) -> Matching:
    perm = [0] * (n + m)
    for x, y in enumerate(f.perm):
        perm[mapping[x]] = mapping[y]
    return Matching(n, m, tuple(perm))


def tensor(f: Diagram, g: Diagram) -> Diagram:
    """Juxtapose ``f`` to the left of ``g``; loops add."""
    n, m, p, q = f.dom, f.cod, g.dom, g.cod
    fmap = [x if x < n else x + p for x in range(n + m)]
    gmap = [x + n if x < p else x + n + m for x in range(p + q)]
    perm = [0] * (n + p + m + q)
    for x, y in enumerate(f.matching.perm):
        perm[fmap[x]] = fmap[y]
    for x, y in enumerate(g.matching.perm):
        perm[gmap[x]] = gmap[y]
    return Diagram(f.loops + g.loops, Matching(n + p, m + q, tuple(perm)), check=False)


def tensor_all(*ds: Diagram) -> Diagram:
    out = identity_diagram(0)
    for d in ds:
        out = tensor(out, d)
    return out


def dagger(d: Diagram) -> Diagram:
    """Reflection in the x-axis: the two rows swap."""
    n, m = d.dom, d.cod
    mapping = [x + m for x in range(n)] + [x - n for x in range(n, n + m)]
    return Diagram(d.loops, _relabel(d.matching, m, n, mapping), check=False)


def conjugate(d: Diagram) -> Diagram:
    """Reflection in the y-axis: each row is read right to left."""
    n, m = d.dom, d.cod
    mapping = [n - 1 - x for x in range(n)] + [2 * n + m - 1 - x for x in range(n, n + m)]
    return Diagram(d.loops, _relabel(d.matching, n, m, mapping), check=False)


def dual(d: Diagram) -> Diagram:
    """Rotation by 180 degrees: ``conjugate(dagger(d))``."""
    return conjugate(dagger(d))


def trace(d: Diagram) -> int:
    """Loop count of ``eps_n o (d (x) 1_n) o eta_n``."""
    if d.dom != d.cod:
        raise ArityError(f"trace of a non-endomorphism {d.dom}->{d.cod}")
    n = d.dom
    closed = compose(compose(unit_eta(n), tensor(d, identity_diagram(n))), counit_eps(n))
    return closed.loops


def name(d: Diagram) -> Diagram:
    """The state ``0 -> n + m``: top ``i`` is bent down to bottom ``n + 1 - i``."""
    n, m = d.dom, d.cod
    mapping = [n - 1 - x for x in range(n)] + list(range(n, n + m))
    return Diagram(d.loops, _relabel(d.matching, 0, n + m, mapping), check=False)


def coname(d: Diagram) -> Diagram:
    """The costate ``n + m -> 0``: bottom ``j`` is bent up to top ``n + m + 1 - j``."""
    n, m = d.dom, d.cod
    mapping = list(range(n)) + [2 * n + m - 1 - x for x in range(n, n + m)]
    return Diagram(d.loops, _relabel(d.matching, n + m, 0, mapping), check=False)


def unname(g: Diagram, n: int) -> Diagram:
    """Inverse of :func:`name`: split the state ``0 -> n + m`` at ``n``."""
    if g.dom != 0:
        raise ArityError(f"unname needs a state 0 -> k, got {g.dom}->{g.cod}")
    if not 0 <= n <= g.cod:
        raise ArityError(f"cannot split {g.cod} bottom endpoints at {n}")
    m = g.cod - n
    mapping = [n - 1 - x if x < n else x for x in range(n + m)]
    matching = _relabel(g.matching, n, m, mapping)
    if not _planar_perm(matching.perm, n):
        raise PlanarityError(f"unname of {g} at {n} is not planar")
    return Diagram(g.loops, matching, check=False)


# -- monics, epics, factorization ----------------------------------------------

def is_monic(d: Diagram) -> bool:
    """No cups."""
    return not d.matching.cups()


def is_epic(d: Diagram) -> bool:
    """No caps."""
    return not d.matching.caps()


def epi_mono_factorize(d: Diagram) -> tuple[Diagram, Diagram]:
    """Split ``d`` as ``compose(e, mo)`` with ``e`` epic and ``mo`` monic.

    ``e`` keeps the cups of ``d`` and ``mo`` its caps; every loop of ``d``
    is put on ``e``.
    """
    f = d.matching
    n, m = f.n, f.m
    through = f.through_lines()
    k = len(through)
    e_perm = [0] * (n + k)
    mo_perm = [0] * (k + m)
    for i, j in f.cups():
        e_perm[i - 1], e_perm[j - 1] = j - 1, i - 1
    for i, j in f.caps():
        mo_perm[k + i - 1], mo_perm[k + j - 1] = k + j - 1, k + i - 1
    for r, (t, b) in enumerate(through):
        e_perm[t - 1], e_perm[n + r] = n + r, t - 1
        mo_perm[r], mo_perm[k + b - 1] = k + b - 1, r
    e = Diagram(d.loops, Matching(n, k, tuple(e_perm)), check=False)
    mo = Diagram(0, Matching(k, m, tuple(mo_perm)), check=False)
    return e, mo


def split_idempotent(d: Diagram) -> tuple[Diagram, Diagram]:
    """Return ``(r, s)`` with ``compose(r, s) == d`` and ``compose(s, r) == id``."""
    if d.dom != d.cod or compose(d, d) != d:
        raise NotIdempotentError(f"{d} is not idempotent")
    return epi_mono_factorize(d)


# -- generator words -----------------------------------------------------------

@dataclass(frozen=True)
class GeneratorWord:
    """A word over ``d`` (a loop) and ``U_1 .. U_{n-1}``, in stacking order.

    ``letters`` holds ``0`` for ``d`` and ``i`` for ``U_i``.
    """

    arity: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        for letter in self.letters:
            if letter != 0 and not 1 <= letter <= self.arity - 1:
                raise ValueError(f"letter U_{letter} out of range for arity {self.arity}")

    @property
    def loops(self) -> int:
        return self.letters.count(0)

    def __str__(self) -> str:
        parts = []
        if self.loops:
            parts.append(f"d^{self.loops}")
        parts.extend(f"U{i}" for i in self.letters if i)
        return " ".join(parts) if parts else "1"


def parse_word(text: str, arity: int) -> GeneratorWord:
    letters: list[int] = []
    for token in text.split():
        if token == "1":
            continue
        if token == "d":
            letters.append(0)
        elif token.startswith("d^") and token[2:].isdigit():
            letters.extend([0] * int(token[2:]))
        elif token.startswith("U") and token[1:].isdigit() and int(token[1:]) > 0:
            letters.append(int(token[1:]))
        else:
            raise ValueError(f"bad generator token {token!r}")
    return GeneratorWord(arity, tuple(letters))


def evaluate_word(w: GeneratorWord) -> Diagram:
    out = identity_diagram(w.arity)
    loops = 0
    for letter in w.letters:
        if letter == 0:
            loops += 1
        else:
            out = compose(out, generator_u(w.arity, letter))
    return out.with_loops(out.loops + loops)


def _lift_cups(pattern: list[int]) -> list[int]:
    """Letters ``X`` with ``X . S_c`` having the given top pattern.

    ``pattern[i]`` is the partner of top position ``i`` (0-based) or ``-1``
    for a through line.  ``S_c = U_1 U_3 .. U_{2c-1}`` has cups
    ``(1,2), (3,4), ..`` and all through lines on the right.  Each step undoes
    one left multiplication by a generator, either un-nesting an enclosed
    adjacent cup or moving a top-level one past the through line on its left.
    """
    p = list(pattern)
    size = len(p)
    letters: list[int] = []

    def enclosing(i: int) -> int | None:
        # innermost cup (x, y) with x < i < y: scan left, hopping over siblings
        x = i - 1
        while x >= 0:
            y = p[x]
            if y == -1:
                return None
            if y > x:
                return x
            x = y - 1
        return None

    while True:
        adjacent = [i for i in range(size - 1) if p[i] == i + 1]
        step = None
        for i in adjacent:
            x = enclosing(i)
            if x is not None:
                y = p[x]
                p[x], p[i] = i, x
                p[i + 1], p[y] = y, i + 1
                step = i
                break
        if step is None:
            for i in adjacent:
                left = [u for u in range(i) if p[u] == -1]
                if left:
                    u = left[-1]
                    p[u], p[i] = i, u
                    p[i + 1] = -1
                    step = i
                    break
        if step is None:
            return letters
        letters.append(step + 1)


def factor_into_generators(d: Diagram) -> GeneratorWord:
    """A generator word evaluating to ``d``, with one ``d`` letter per loop.

    ``d`` is rebuilt as ``X . S_c . Y`` where ``S_c`` places the ``c`` cups and
    caps side by side on the left, ``X`` moves the cups into place and ``Y``
    the caps.
    """
    if d.dom != d.cod:
        raise ArityError(f"only endomorphisms factor into generators, got {d.dom}->{d.cod}")
    n = d.dom
    f = d.matching
    top_pattern = [y if y < n else -1 for y in f.perm[:n]]
    bottom_pattern = [y - n if y >= n else -1 for y in f.perm[n:]]
    c = len(f.cups())
    x_letters = _lift_cups(top_pattern)
    y_letters = list(reversed(_lift_cups(bottom_pattern)))
    middle = list(range(1, 2 * c, 2))
    return GeneratorWord(n, (0,) * d.loops + tuple(x_letters + middle + y_letters))


# -- named examples ------------------------------------------------------------

def left_wave() -> Diagram:
    """``U_2 U_1`` in TLM_3."""
    return compose(generator_u(3, 2), generator_u(3, 1))


def right_wave() -> Diagram:
    """``U_1 U_2`` in TLM_3, the mirror of :func:`left_wave`."""
    return compose(generator_u(3, 1), generator_u(3, 2))
