import itertools
import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlcat.knots import (
    BraidWord,
    bracket_pairs,
    bracket_via_tl,
    braid_to_tl,
    jones,
    letter_to_tl,
    normalize_bracket,
    parse_braid,
    state_sum_bracket,
)
from tlcat.laurent import ONE, A, LaurentPoly, format_in_t
from tlcat.linear import KAUFFMAN_TAU, lift, lin_compose
from tlcat.planar import generator_u, identity_diagram

GOLDEN = Path(__file__).parent / "golden"
LOOP = -(A**2) - A**-2


def letters(strands, max_size=7):
    if strands < 2:
        return st.just([])
    signed = st.integers(1, strands - 1).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(signed, max_size=max_size)


def brute_force_bracket(w: BraidWord) -> LaurentPoly:
    """Sum over all 2^|w| smoothings of the closed braid, counting circles directly."""
    n, k = w.strands, len(w.letters)

    def node(level, pos):
        return level * n + pos

    total = LaurentPoly({})
    for choice in itertools.product((False, True), repeat=k):
        parent = list(range((k + 1) * n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def join(a, b):
            parent[find(a)] = find(b)

        weight = 0
        for level, (letter, turned) in enumerate(zip(w.letters, choice)):
            i = abs(letter) - 1
            for pos in range(n):
                if pos not in (i, i + 1) or not turned:
                    join(node(level, pos), node(level + 1, pos))
            if turned:
                join(node(level, i), node(level, i + 1))
                join(node(level + 1, i), node(level + 1, i + 1))
            # a positive crossing weighs its vertical smoothing by A, the turned one by A^-1
            sign = 1 if letter > 0 else -1
            weight += -sign if turned else sign
        for pos in range(n):
            join(node(k, pos), node(0, pos))
        circles = len({find(x) for x in range(len(parent))})
        total = total + A**weight * LOOP ** (circles - 1)
    return total


def test_parse_and_format():
    w = parse_braid("strands=3 word=1 -2 1")
    assert w == BraidWord(3, (1, -2, 1))
    assert str(w) == "strands=3 word=1 -2 1"
    assert parse_braid(" strands = 2  word = 1, 1 ,1 ") == BraidWord(2, (1, 1, 1))
    assert parse_braid("strands=4 word=") == BraidWord(4, ())


@pytest.mark.parametrize("text", ["strands=2 word=2", "strands=2 word=0", "word=1", "strands=x word=1", "strands=0 word="])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_braid(text)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), letters(n))))
def test_round_trip(case):
    n, word = case
    w = BraidWord(n, tuple(word))
    assert parse_braid(str(w)) == w


def test_letter_images():
    u = letter_to_tl(2, 1)
    assert u.coefficient(generator_u(2, 1).matching) == A**-1
    assert u.coefficient(identity_diagram(2).matching) == A
    v = letter_to_tl(2, -1)
    assert v.coefficient(generator_u(2, 1).matching) == A
    assert v.coefficient(identity_diagram(2).matching) == A**-1


@pytest.mark.parametrize("n", range(2, 7))
def test_braid_relations_hold_in_the_image(n):
    one = lift(identity_diagram(n), KAUFFMAN_TAU)
    for i in range(1, n):
        assert lin_compose(letter_to_tl(n, i), letter_to_tl(n, -i)) == one
        for j in range(1, n):
            if abs(i - j) == 1:
                lhs = braid_to_tl(BraidWord(n, (i, j, i)))
                rhs = braid_to_tl(BraidWord(n, (j, i, j)))
                assert lhs == rhs
            elif abs(i - j) > 1:
                assert braid_to_tl(BraidWord(n, (i, j))) == braid_to_tl(BraidWord(n, (j, i)))


def test_trefoil_golden():
    expected = dict(line.split(": ", 1) for line in (GOLDEN / "trefoil.txt").read_text().splitlines())
    w = parse_braid(expected["braid"])
    assert str(bracket_via_tl(w)) == expected["bracket"]
    assert str(jones(w)) == expected["jones"]
    assert format_in_t(jones(w)) == expected["jones_t"]


def test_known_invariants():
    assert format_in_t(jones(BraidWord(2, (-1, -1, -1)))) == "t^-1 + t^-3 - t^-4"
    assert jones(BraidWord(2, (1, 1))) == -(A**-2) - A**-10
    assert format_in_t(jones(BraidWord(3, (1, -2, 1, -2)))) == "t^2 - t + 1 - t^-1 + t^-2"
    assert bracket_via_tl(BraidWord(1, ())) == ONE
    assert bracket_via_tl(BraidWord(2, ())) == LOOP


@pytest.mark.parametrize("word", [(), (1,), (-1,), (1, -2), (-1, 2, 3), (1, 1, -1)])
def test_unknot_presentations(word):
    n = max((abs(s) for s in word), default=0) + 1
    assert jones(BraidWord(n, word)) == ONE


def test_unlink_of_two():
    assert jones(BraidWord(2, ())) == LOOP


def test_normalization_by_writhe():
    assert normalize_bracket(-(A**3), 1) == ONE
    assert normalize_bracket(-(A**-3), -1) == ONE


def test_brute_force_agrees_on_random_words():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 5)
        letters = tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 8))) if n > 1 else ()
        w = BraidWord(n, letters)
        expected = brute_force_bracket(w)
        assert state_sum_bracket(w) == expected
        assert bracket_via_tl(w) == expected


def test_bracket_pairs_covers_all_words():
    seen = list(bracket_pairs(3, 3))
    assert len(seen) == sum(4**k for k in range(4))
    assert len({w for w, _, _ in seen}) == len(seen)
    for w, tl, ss in seen:
        assert tl == ss == brute_force_bracket(w)


@given(letters(4))
def test_invariance_under_moves(word):
    w = BraidWord(4, tuple(word))
    j = jones(w)
    # conjugation, both Markov stabilizations, and inserting a cancelling pair
    assert jones(BraidWord(4, (2,)) * w * BraidWord(4, (-2,))) == j
    assert jones(w.stabilize(1)) == j
    assert jones(w.stabilize(-1)) == j
    assert jones(BraidWord(4, (3, -3)) * w) == j
    if word:
        assert jones(BraidWord(4, tuple(word[1:]) + (word[0],))) == j


@given(letters(4))
def test_mirror_inverts_variable(word):
    w = BraidWord(4, tuple(word))
    assert bracket_via_tl(w.mirror()) == bracket_via_tl(w).mirror()
    assert jones(w.mirror()) == jones(w).mirror()
    # the reversed inverse word closes to the mirror image as well
    assert jones(w.inverse()) == jones(w.mirror())


def test_writhe_and_stabilize():
    w = BraidWord(3, (1, -2, 1))
    assert w.writhe == 1
    assert w.stabilize() == BraidWord(4, (1, -2, 1, 3))
    assert w.stabilize(-1).writhe == 0
    with pytest.raises(ValueError):
        BraidWord(2, (1,)) * BraidWord(3, ())
