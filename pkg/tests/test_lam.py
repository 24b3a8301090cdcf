import pytest

from tlcat.category import compose, tensor
from tlcat.lam import (
    App,
    Arrow,
    Base,
    Judgement,
    Lam,
    LambdaSyntaxError,
    LambdaTypeError,
    NonRightmostAbstraction,
    OutOfOrderUsage,
    ReusedVariable,
    SplitFailure,
    TypeMismatch,
    UnboundVariable,
    UnusedVariable,
    Var,
    beta_step,
    compile_derivation,
    dimension,
    enumerate_closed_terms,
    format_derivation,
    normalize,
    parse_judgement,
    parse_term,
    parse_type,
    soundness_check,
    term_size,
    typecheck,
)
from tlcat.planar import counit_eps, format_diagram, identity_diagram, is_planar, unit_eta

B = r"\a. \b. \c. a (b c)"


# -- syntax ----------------------------------------------------------------------


def test_parse_types():
    o = Base("o")
    assert parse_type("o -> o -> o") == Arrow(o, Arrow(o, o))
    assert parse_type("(o -> o) -> o") == Arrow(Arrow(o, o), o)
    assert parse_type("o → o") == Arrow(o, o)
    assert str(parse_type("(a -> b) -> c")) == "(a -> b) -> c"
    assert str(parse_type("a -> (b -> c)")) == "a -> b -> c"


def test_parse_terms():
    assert parse_term("f x y") == App(App(Var("f"), Var("x")), Var("y"))
    assert parse_term(r"\x. \y. x y") == Lam("x", Lam("y", App(Var("x"), Var("y"))))
    assert parse_term("λx. x") == Lam("x", Var("x"))
    # an abstraction may end an application without parentheses
    assert parse_term(r"f \x. x") == App(Var("f"), Lam("x", Var("x")))
    assert str(parse_term("f (g x) y")) == "f (g x) y"
    assert str(parse_term(r"f \x. x")) == r"f (\x. x)"


@pytest.mark.parametrize(
    "text, pos",
    [(r"\x. ", 4), ("(x y", 4), ("x )", 2), (r"\. x", 1), ("x : o", 2), ("", 0)],
)
def test_term_syntax_errors_carry_position(text, pos):
    with pytest.raises(LambdaSyntaxError) as info:
        parse_term(text)
    assert info.value.pos == pos
    assert f"column {pos + 1}" in str(info.value)


@pytest.mark.parametrize("text, pos", [("o->", 3), ("(o", 2), ("o o", 2)])
def test_type_syntax_errors_carry_position(text, pos):
    with pytest.raises(LambdaSyntaxError) as info:
        parse_type(text)
    assert info.value.pos == pos


def test_parse_judgement():
    j = parse_judgement("x: o, f: o -> o |- f x")
    assert j == Judgement((("x", Base("o")), ("f", parse_type("o -> o"))), parse_term("f x"))
    assert parse_judgement(r"\x. x").context == ()
    assert parse_judgement("x, y ⊢ x y").context == (("x", None), ("y", None))


def test_term_size_counts_nodes():
    assert term_size(parse_term("x")) == 1
    assert term_size(parse_term(r"\x. x")) == 2
    assert term_size(parse_term(B)) == 8


# -- typing --------------------------------------------------------------------------


def test_composition_combinator_types():
    d = typecheck((), B, expected="(b -> c) -> (a -> b) -> a -> c")
    assert [n.rule for n in d.nodes()] == ["abs", "abs", "abs", "app", "var", "app", "var", "var"]
    assert str(typecheck((), B).type) == "(o -> o) -> (o -> o) -> o -> o"


@pytest.mark.parametrize(
    "judgement, error",
    [
        ("|- x", UnboundVariable),
        ("x:o |- x x", ReusedVariable),
        ("x:o, y:o |- x", UnusedVariable),
        (r"|- \x.\y. y x", NonRightmostAbstraction),
        ("x:o, f:o->o |- f x", OutOfOrderUsage),
        ("a:o->o->o, b:o, c:o |- (a c) b", SplitFailure),
        ("x:o, y:o |- x y", TypeMismatch),
        (r"x:o |- \x. x", UnusedVariable),
    ],
)
def test_typing_errors(judgement, error):
    with pytest.raises(error):
        typecheck(judgement)
    assert issubclass(error, LambdaTypeError)


def test_expected_type_mismatch():
    with pytest.raises(TypeMismatch):
        typecheck((), r"\x. x", expected="o")


def test_unconstrained_types_default_to_base():
    assert str(typecheck(r"|- \x. x").type) == "o -> o"
    assert str(typecheck(r"|- \x. x (\y.y)").type) == "((o -> o) -> o) -> o"


def test_derivation_is_linear_and_ordered():
    for t in enumerate_closed_terms(9):
        d = typecheck((), t)
        for node in d.nodes():
            names = [x for x, _ in node.context]
            if node.rule == "var":
                assert names == [node.term.name]
            elif node.rule == "app":
                fn, arg = node.children
                assert names == [x for x, _ in fn.context] + [x for x, _ in arg.context]
            else:
                (body,) = node.children
                assert [x for x, _ in body.context] == names + [node.term.var]


def test_format_derivation():
    assert format_derivation(typecheck(r"|- \x. x")) == " |- \\x. x : o -> o   [abs]\n  x:o |- x : o   [var]"


# -- compilation ---------------------------------------------------------------------


def test_dimension():
    assert dimension(parse_type("o -> o")) == 2
    assert dimension(parse_type("(A -> B) -> A"), {"A": 2, "B": 3}) == 7


def test_compile_examples():
    assert format_diagram(compile_derivation(typecheck((), B))) == "tl1 dom=0 cod=6 loops=0 pairs=1'-6',2'-3',4'-5'"
    d = typecheck("x:o->o, y:o->o, z:o |- x (y z)")
    assert format_diagram(compile_derivation(d)) == "tl1 dom=5 cod=1 loops=0 pairs=1-1',2-3,4-5"


@pytest.mark.parametrize("k", range(1, 4))
def test_variable_is_identity_and_identity_is_unit(k):
    dims = {"A": k}
    assert compile_derivation(typecheck("x:A |- x"), dims) == identity_diagram(k)
    closed = compile_derivation(typecheck((), r"\x. x", expected="A -> A"), dims)
    assert closed == unit_eta(k)


def test_eta_expansion_compiles_to_the_same_diagram():
    for ty in ["o -> o", "(o -> o) -> o", "o -> o -> o"]:
        plain = compile_derivation(typecheck(f"f:{ty} |- f"))
        expanded = compile_derivation(typecheck((("f", parse_type(ty)),), r"\x. f x"))
        assert expanded == plain, ty


def test_application_is_evaluation():
    # f x is the wires of f and x side by side, then the counit on the argument wires
    d = compile_derivation(typecheck("f:o->o, x:o |- f x"))
    one = identity_diagram(1)
    assert d == compose(tensor(tensor(one, one), one), tensor(one, counit_eps(1)))


def test_compiled_arities_and_planarity():
    dims = {"o": 2}
    for t in enumerate_closed_terms(9):
        d = typecheck((), t)
        diagram = compile_derivation(d, dims)
        assert is_planar(diagram.matching)
        assert diagram.dom == 0 and diagram.cod == dimension(d.type, dims)


# -- reduction -----------------------------------------------------------------------


def test_beta():
    assert beta_step(parse_term(r"(\x. x) y")) == Var("y")
    assert beta_step(parse_term("x y")) is None
    assert normalize(parse_term(f"({B}) a b c")) == parse_term("a (b c)")


def test_substitution_avoids_capture():
    t = normalize(parse_term(r"(\x. \y. x y) y"))
    assert isinstance(t, Lam) and t.var != "y"
    assert t.body == App(Var("y"), Var(t.var))


def test_normalize_step_limit():
    with pytest.raises(RuntimeError):
        normalize(parse_term(f"({B}) a b c"), max_steps=1)


def test_closed_term_counts():
    # closed planar terms with v variables have size 3v - 1 and are counted by
    # rooted bridgeless planar cubic maps: 1, 4, 32, 336
    sizes = [term_size(t) for t in enumerate_closed_terms(11)]
    assert [sizes.count(3 * v - 1) for v in range(1, 5)] == [1, 4, 32, 336]
    assert len(sizes) == 373
    assert len(list(enumerate_closed_terms(5, typable_only=False))) > len(list(enumerate_closed_terms(5)))


def test_soundness_and_subject_reduction():
    for t in enumerate_closed_terms(11):
        d = typecheck((), t)
        nf = normalize(t)
        assert typecheck((), nf, expected=d.type).type == d.type
        assert soundness_check((), t)
        assert soundness_check((), t, {"o": 2})


def test_soundness_on_open_redexes():
    assert soundness_check(f"a:o->o, b:o->o, c:o |- ({B}) a b c")
    assert soundness_check(r"y:o |- (\x. x) y")
