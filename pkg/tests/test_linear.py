import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlcat.category import ArityError, compose, tensor
from tlcat.laurent import ZERO, A, LaurentPoly
from tlcat.linear import (
    KAUFFMAN_TAU,
    TLMorphism,
    check_tl_relations,
    lift,
    lin_add,
    lin_compose,
    lin_tensor,
    lin_trace,
    negate,
    scalar_mul,
)
from tlcat.planar import (
    PlanarityError,
    diagram,
    enumerate_planar,
    generator_u,
    identity_diagram,
    make_matching,
)

from conftest import composable, diagrams

TAU = KAUFFMAN_TAU
coeffs = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=3).map(LaurentPoly)


@st.composite
def sums(draw, n, m, tau=TAU):
    basis = enumerate_planar(n, m)
    chosen = draw(st.lists(st.sampled_from(basis), max_size=4)) if basis else []
    return TLMorphism(n, m, tau, [(f, draw(coeffs)) for f in chosen])


def test_lift_folds_loops_into_tau():
    u = generator_u(2, 1)
    assert lift(compose(u, u), TAU) == scalar_mul(TAU, lift(u, TAU))
    assert lift(u, TAU).terms == {u.matching: LaurentPoly({0: 1})}
    scalar = diagram(0, 0, [], loops=2)
    assert lift(scalar, TAU).coefficient(scalar.matching) == TAU**2


def test_expand_square_of_generic_element():
    b = A**-1
    x = scalar_mul(A, lift(generator_u(2, 1), TAU)) + scalar_mul(b, lift(identity_diagram(2), TAU))
    expected = scalar_mul(A**2 * TAU + 2 * A * b, lift(generator_u(2, 1), TAU)) + scalar_mul(
        b * b, lift(identity_diagram(2), TAU)
    )
    assert lin_compose(x, x) == expected


def test_trace_examples():
    for n in range(5):
        assert lin_trace(lift(identity_diagram(n), TAU)) == TAU**n
    assert lin_trace(TLMorphism.zero(3, 3, TAU)) == ZERO
    b = A**-1
    x = scalar_mul(A, lift(generator_u(2, 1), TAU)) + scalar_mul(b, lift(identity_diagram(2), TAU))
    assert lin_trace(x) == A * TAU + b * TAU**2


def test_tl_relations_with_symbolic_and_kauffman_tau():
    assert check_tl_relations(4, TAU)
    assert check_tl_relations(2, A**7)
    # tau = A is a fresh indeterminate: nothing else in the algebra uses A
    assert all(check_tl_relations(n, A) for n in range(1, 9))


def test_mixing_tau_is_an_error():
    x = lift(identity_diagram(2), TAU)
    y = lift(identity_diagram(2), A)
    with pytest.raises(ValueError):
        lin_compose(x, y)
    with pytest.raises(ValueError):
        lin_add(x, y)


def test_arity_errors():
    with pytest.raises(ArityError):
        lin_compose(lift(identity_diagram(2), TAU), lift(identity_diagram(3), TAU))
    with pytest.raises(ArityError):
        lin_add(lift(identity_diagram(2), TAU), lift(identity_diagram(3), TAU))
    with pytest.raises(ArityError):
        lin_trace(lift(diagram(0, 2, [((1, 1), (1, 2))]), TAU))


def test_zero_terms_dropped():
    x = lift(generator_u(3, 1), TAU)
    assert lin_add(x, negate(x)).is_zero()
    assert scalar_mul(0, x).is_zero()
    assert str(TLMorphism.zero(1, 1, TAU)) == "0"


@given(st.data())
def test_identity_is_neutral(data):
    x = data.draw(sums(3, 3))
    one = TLMorphism.identity(3, TAU)
    assert lin_compose(one, x) == x == lin_compose(x, one)


@given(st.data())
def test_composition_associative_and_bilinear(data):
    x = data.draw(sums(2, 4))
    y, y2 = data.draw(sums(4, 2)), data.draw(sums(4, 2))
    z = data.draw(sums(2, 2))
    r = data.draw(coeffs)
    assert lin_compose(lin_compose(x, y), z) == lin_compose(x, lin_compose(y, z))
    assert lin_compose(x, lin_add(y, y2)) == lin_add(lin_compose(x, y), lin_compose(x, y2))
    assert lin_compose(scalar_mul(r, x), y) == scalar_mul(r, lin_compose(x, y))


@given(st.data())
def test_trace_cyclic(data):
    x = data.draw(sums(3, 1))
    y = data.draw(sums(1, 3))
    assert lin_trace(lin_compose(x, y)) == lin_trace(lin_compose(y, x))


@given(composable(2, max_arity=5))
def test_lift_is_functorial(pair):
    f, g = pair
    assert lift(compose(f, g), TAU) == lin_compose(lift(f, TAU), lift(g, TAU))


@given(diagrams(max_arity=4), diagrams(max_arity=4))
def test_lift_respects_tensor(f, g):
    assert lift(tensor(f, g), TAU) == lin_tensor(lift(f, TAU), lift(g, TAU))


def test_terms_must_be_planar_and_fit():
    crossing = make_matching(2, 2, [((0, 1), (1, 2)), ((0, 2), (1, 1))])
    with pytest.raises(PlanarityError):
        TLMorphism(2, 2, TAU, {crossing: 1})
    with pytest.raises(ArityError):
        TLMorphism(3, 3, TAU, {identity_diagram(2).matching: 1})


def test_equal_sums_hash_equal():
    u = lift(generator_u(3, 2), TAU)
    one = lift(identity_diagram(3), TAU)
    assert hash(u + one) == hash(one + u)
