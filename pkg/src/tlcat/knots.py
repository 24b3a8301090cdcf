"""Braid words, their Temperley-Lieb images, the Kauffman bracket and Jones polynomial.

Conventions: letter ``+i`` is a positive crossing of strands ``i`` and
``i + 1`` and maps to ``A^-1 U_i + A 1``; letter ``-i`` maps to
``A U_i + A^-1 1``.  Loops evaluate to ``-A^2 - A^-2`` and the Jones
normalization is ``(-A^3)^(-writhe)``, so every unknot presentation gets 1.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .laurent import ZERO, A, LaurentPoly
from .linear import KAUFFMAN_TAU, TLMorphism, _closure_loops, lift, lin_compose, scalar_mul
from .planar import generator_u, identity_diagram

__all__ = [
    "BraidWord",
    "parse_braid",
    "braid_to_tl",
    "letter_to_tl",
    "bracket_via_tl",
    "state_sum_bracket",
    "jones",
    "normalize_bracket",
    "bracket_pairs",
]


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid generators on ``strands`` strands."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise ValueError(f"a braid needs at least one strand, got {self.strands}")
        for s in self.letters:
            if s == 0 or abs(s) > self.strands - 1:
                raise ValueError(f"letter {s} out of range for {self.strands} strands")

    @property
    def writhe(self) -> int:
        return sum(1 if s > 0 else -1 for s in self.letters)

    def mirror(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-s for s in self.letters))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-s for s in reversed(self.letters)))

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError("braids on different numbers of strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def stabilize(self, sign: int = 1) -> BraidWord:
        """Markov stabilization: add a strand and one crossing onto it."""
        n = self.strands
        return BraidWord(n + 1, self.letters + ((n if sign > 0 else -n),))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return f"strands={self.strands} word=" + " ".join(str(s) for s in self.letters)


_BRAID = re.compile(r"^\s*strands\s*=\s*(\d+)\s+word\s*=(.*)$")


def parse_braid(text: str) -> BraidWord:
    """Parse ``strands=<n> word=<s1> <s2> ...``; the word may be empty."""
    match = _BRAID.match(text)
    if not match:
        raise ValueError(f"expected 'strands=<n> word=<letters>', got {text!r}")
    letters = []
    for tok in match.group(2).replace(",", " ").split():
        try:
            letters.append(int(tok))
        except ValueError:
            raise ValueError(f"bad braid letter {tok!r}") from None
    return BraidWord(int(match.group(1)), tuple(letters))


# -- Temperley-Lieb representation ---------------------------------------------

@lru_cache(maxsize=None)
def letter_to_tl(strands: int, letter: int) -> TLMorphism:
    i = abs(letter)
    u = lift(generator_u(strands, i), KAUFFMAN_TAU)
    one = lift(identity_diagram(strands), KAUFFMAN_TAU)
    if letter > 0:
        return scalar_mul(A ** -1, u) + scalar_mul(A, one)
    return scalar_mul(A, u) + scalar_mul(A ** -1, one)


def braid_to_tl(w: BraidWord) -> TLMorphism:
    """Product of the letter images, first letter on top."""
    out = lift(identity_diagram(w.strands), KAUFFMAN_TAU)
    for s in w.letters:
        out = lin_compose(out, letter_to_tl(w.strands, s))
    return out


def _closure_bracket(x: TLMorphism) -> LaurentPoly:
    # the closure of an n >= 1 strand diagram has at least one loop, so
    # dividing the trace by one tau is exact term by term
    total = ZERO
    for f, r in x.terms.items():
        total = total + r * x.tau ** (_closure_loops(f) - 1)
    return total


def bracket_via_tl(w: BraidWord) -> LaurentPoly:
    """Kauffman bracket of the braid closure via the TL trace."""
    return _closure_bracket(braid_to_tl(w))


def normalize_bracket(bracket: LaurentPoly, writhe: int) -> LaurentPoly:
    return (-(A ** 3)) ** -writhe * bracket


def jones(w: BraidWord) -> LaurentPoly:
    """``(-A^3)^(-writhe) <closure of w>`` in powers of ``A``."""
    return normalize_bracket(bracket_via_tl(w), w.writhe)


# -- state sum -------------------------------------------------------------------
#
# A state of a partially smoothed braid records only what the unsmoothed
# rest can see: for each of the 2n boundary points (the n top endpoints,
# then the n current endpoints) the label of the arc it lies on, plus the
# number of circles already closed off.  Labels are canonical (numbered
# by first occurrence), so equal states merge.

State = tuple[tuple[int, ...], int]


def _canon(labels: list[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@lru_cache(maxsize=None)
def _smooth(state: State, n: int, i: int, cup_cap: bool) -> State:
    """Place a horizontal (cup-cap) or vertical smoothing at strands i, i+1."""
    labels, circles = state
    if not cup_cap:
        return state
    lab = list(labels)
    a, b = lab[n + i - 1], lab[n + i]
    if a == b:
        circles += 1
    else:
        lab = [a if x == b else x for x in lab]
    fresh = max(lab) + 1
    lab[n + i - 1] = lab[n + i] = fresh
    return _canon(lab), circles


@lru_cache(maxsize=None)
def _close(state: State, n: int) -> int:
    """Circles in the closure: glue current endpoint j back to top endpoint j."""
    labels, circles = state
    parent = list(range(max(labels) + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in range(n):
        ra, rb = find(labels[j]), find(labels[n + j])
        if ra == rb:
            circles += 1
        else:
            parent[ra] = rb
    return circles


def _initial_state(n: int) -> State:
    return _canon(list(range(n)) * 2), 0


def _advance(states: dict[State, Counter], n: int, letter: int) -> dict[State, Counter]:
    """Smooth one more crossing both ways; weights are exponents of A."""
    i = abs(letter)
    sign = 1 if letter > 0 else -1
    out: dict[State, Counter] = {}
    for state, weights in states.items():
        # positive crossing: vertical smoothing weighs A, horizontal A^-1
        for cup_cap, shift in ((False, sign), (True, -sign)):
            target = out.setdefault(_smooth(state, n, i, cup_cap), Counter())
            for e, c in weights.items():
                target[e + shift] += c
    return out


def _evaluate(states: dict[State, Counter], n: int) -> LaurentPoly:
    total: dict[int, int] = {}
    for state, weights in states.items():
        loop_factor = KAUFFMAN_TAU ** (_close(state, n) - 1)
        for e, c in weights.items():
            for k, d in loop_factor.terms.items():
                total[e + k] = total.get(e + k, 0) + c * d
    return LaurentPoly(total)


def state_sum_bracket(w: BraidWord) -> LaurentPoly:
    """Kauffman bracket by summing over all ``2^len(w)`` smoothings.

    Independent of the diagram composition code: circles are tracked by
    relabelling boundary arcs directly.
    """
    n = w.strands
    states = {_initial_state(n): Counter({0: 1})}
    for s in w.letters:
        states = _advance(states, n, s)
    return _evaluate(states, n)


def bracket_pairs(strands: int, max_length: int) -> Iterator[tuple[BraidWord, LaurentPoly, LaurentPoly]]:
    """Every word up to ``max_length`` on ``strands`` strands with both brackets.

    Yields ``(word, bracket_via_tl(word), state_sum_bracket(word))``; words
    sharing a prefix share its work, so exhaustive sweeps stay cheap.
    """
    letters = [s for i in range(1, strands) for s in (i, -i)]
    identity = lift(identity_diagram(strands), KAUFFMAN_TAU)
    stack = [((), identity, {_initial_state(strands): Counter({0: 1})})]
    while stack:
        word, image, states = stack.pop()
        yield BraidWord(strands, word), _closure_bracket(image), _evaluate(states, strands)
        if len(word) < max_length:
            for s in reversed(letters):
                stack.append(
                    (
                        word + (s,),
                        lin_compose(image, letter_to_tl(strands, s)),
                        _advance(states, strands, s),
                    )
                )
