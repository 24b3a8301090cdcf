"""The planar (ordered linear) lambda calculus and its compilation into TL.

Typing is syntax-directed: every context variable is used exactly once,
in context order, and an abstraction always binds the rightmost entry.
A well-typed judgement ``G |- t : T`` compiles to a diagram
``dim(G) -> dim(T)`` where ``dim(T -> U) = dim(U) + dim(T)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from .category import compose, tensor
from .planar import Diagram, counit_eps, identity_diagram, unit_eta

__all__ = [
    "Base",
    "Arrow",
    "TVar",
    "LType",
    "Var",
    "App",
    "Lam",
    "Term",
    "Derivation",
    "Judgement",
    "LambdaSyntaxError",
    "LambdaTypeError",
    "UnboundVariable",
    "ReusedVariable",
    "UnusedVariable",
    "NonRightmostAbstraction",
    "OutOfOrderUsage",
    "SplitFailure",
    "TypeMismatch",
    "parse_type",
    "parse_term",
    "parse_judgement",
    "typecheck",
    "compile_derivation",
    "dimension",
    "beta_step",
    "normalize",
    "soundness_check",
    "term_size",
    "enumerate_closed_terms",
    "format_derivation",
    "DEFAULT_BASE",
]

DEFAULT_BASE = "o"


# -- types -----------------------------------------------------------------------

@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Arrow:
    arg: LType
    res: LType

    def __str__(self) -> str:
        left = f"({self.arg})" if isinstance(self.arg, Arrow) else str(self.arg)
        return f"{left} -> {self.res}"


@dataclass(frozen=True)
class TVar:
    """A unification variable; never survives a finished typecheck."""

    ident: int

    def __str__(self) -> str:
        return f"?{self.ident}"


LType = Union[Base, Arrow, TVar]


def dimension(t: LType, base_dims: Mapping[str, int] | None = None) -> int:
    """Number of wires a type denotes; base types default to one wire."""
    if isinstance(t, Arrow):
        return dimension(t.res, base_dims) + dimension(t.arg, base_dims)
    if isinstance(t, Base):
        return (base_dims or {}).get(t.name, 1)
    raise ValueError(f"unresolved type variable {t}")


# -- terms -----------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fn: Term
    arg: Term

    def __str__(self) -> str:
        left = f"({self.fn})" if isinstance(self.fn, Lam) else str(self.fn)
        right = str(self.arg) if isinstance(self.arg, Var) else f"({self.arg})"
        return f"{left} {right}"


@dataclass(frozen=True)
class Lam:
    var: str
    body: Term
    annot: LType | None = None

    def __str__(self) -> str:
        binder = self.var if self.annot is None else f"{self.var}:{self.annot}"
        return f"\\{binder}. {self.body}"


Term = Union[Var, App, Lam]


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, App):
        return 1 + term_size(t.fn) + term_size(t.arg)
    return 1 + term_size(t.body)


def occurrences(t: Term) -> list[str]:
    """Free variable occurrences, left to right, with repetition."""
    if isinstance(t, Var):
        return [t.name]
    if isinstance(t, App):
        return occurrences(t.fn) + occurrences(t.arg)
    return [x for x in occurrences(t.body) if x != t.var]


# -- parsing ---------------------------------------------------------------------

class LambdaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.pos = pos


_PUNCT = ("->", "|-", "\\", "λ", ".", "(", ")", ":", ",", "⊢", "→")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(({"⊢": "|-", "→": "->", "λ": "\\"}.get(p, p), i))
                i += len(p)
                break
        else:
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            if j == i:
                raise LambdaSyntaxError(f"unexpected character {ch!r}", text, i)
            tokens.append((text[i:j], i))
            i = j
    tokens.append(("", len(text)))
    return tokens


def _is_ident(tok: str) -> bool:
    return bool(tok) and (tok[0].isalnum() or tok[0] == "_")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> str:
        return self.tokens[self.i][0]

    def error(self, message: str) -> LambdaSyntaxError:
        return LambdaSyntaxError(message, self.text, self.tokens[self.i][1])

    def expect(self, tok: str) -> None:
        if self.tok != tok:
            found = repr(self.tok) if self.tok else "end of input"
            raise self.error(f"expected {tok!r}, found {found}")
        self.i += 1

    def ident(self) -> str:
        if not _is_ident(self.tok):
            found = repr(self.tok) if self.tok else "end of input"
            raise self.error(f"expected an identifier, found {found}")
        name = self.tok
        self.i += 1
        return name

    def done(self) -> None:
        if self.tok:
            raise self.error(f"unexpected {self.tok!r}")

    # T ::= atom | atom -> T
    def ltype(self) -> LType:
        left = self.type_atom()
        if self.tok == "->":
            self.i += 1
            return Arrow(left, self.ltype())
        return left

    def type_atom(self) -> LType:
        if self.tok == "(":
            self.i += 1
            t = self.ltype()
            self.expect(")")
            return t
        return Base(self.ident())

    # t ::= \x[:T]. t | atom+ [\x. t]
    def term(self) -> Term:
        if self.tok == "\\":
            return self.abstraction()
        head = self.term_atom()
        while True:
            if self.tok == "\\":
                return App(head, self.abstraction())
            if self.tok == "(" or _is_ident(self.tok):
                head = App(head, self.term_atom())
            else:
                return head

    def abstraction(self) -> Lam:
        self.expect("\\")
        var = self.ident()
        annot = None
        if self.tok == ":":
            self.i += 1
            annot = self.ltype()
        self.expect(".")
        return Lam(var, self.term(), annot)

    def term_atom(self) -> Term:
        if self.tok == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        return Var(self.ident())


def parse_type(text: str) -> LType:
    p = _Parser(text)
    t = p.ltype()
    p.done()
    return t


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


@dataclass(frozen=True)
class Judgement:
    """``x:T, y:U |- t``; an entry without a type gets one inferred."""

    context: tuple[tuple[str, LType | None], ...]
    term: Term

    def __str__(self) -> str:
        ctx = ", ".join(x if t is None else f"{x}:{t}" for x, t in self.context)
        return f"{ctx} |- {self.term}" if ctx else str(self.term)


def parse_judgement(text: str) -> Judgement:
    """Parse ``x:T, y:U |- term``, or a bare term with an empty context."""
    p = _Parser(text)
    if not any(tok == "|-" for tok, _ in p.tokens):
        t = p.term()
        p.done()
        return Judgement((), t)
    entries: list[tuple[str, LType | None]] = []
    if p.tok != "|-":
        while True:
            name = p.ident()
            annot = None
            if p.tok == ":":
                p.i += 1
                annot = p.ltype()
            entries.append((name, annot))
            if p.tok != ",":
                break
            p.i += 1
    p.expect("|-")
    t = p.term()
    p.done()
    return Judgement(tuple(entries), t)


# -- typing ----------------------------------------------------------------------

class LambdaTypeError(ValueError):
    """Base class for the distinct reasons a judgement fails to type."""


class UnboundVariable(LambdaTypeError):
    pass


class ReusedVariable(LambdaTypeError):
    pass


class UnusedVariable(LambdaTypeError):
    pass


class NonRightmostAbstraction(LambdaTypeError):
    """The bound variable is not the last thing its body consumes."""


class OutOfOrderUsage(LambdaTypeError):
    """An application consumes its argument's variables before its function's."""


class SplitFailure(LambdaTypeError):
    """Function and argument variables interleave in the context."""


class TypeMismatch(LambdaTypeError):
    pass


Context = tuple[tuple[str, LType], ...]


@dataclass(frozen=True)
class Derivation:
    """One rule instance: ``rule`` is ``var``, ``abs`` or ``app``."""

    rule: str
    context: Context
    term: Term
    type: LType
    children: tuple[Derivation, ...] = field(default=())

    def nodes(self) -> Iterator[Derivation]:
        yield self
        for c in self.children:
            yield from c.nodes()


class _Unifier:
    def __init__(self):
        self.subst: dict[int, LType] = {}
        self.counter = itertools.count()

    def fresh(self) -> TVar:
        return TVar(next(self.counter))

    def resolve(self, t: LType) -> LType:
        while isinstance(t, TVar) and t.ident in self.subst:
            t = self.subst[t.ident]
        return t

    def zonk(self, t: LType) -> LType:
        t = self.resolve(t)
        if isinstance(t, Arrow):
            return Arrow(self.zonk(t.arg), self.zonk(t.res))
        return t

    def occurs(self, v: TVar, t: LType) -> bool:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t == v
        if isinstance(t, Arrow):
            return self.occurs(v, t.arg) or self.occurs(v, t.res)
        return False

    def unify(self, a: LType, b: LType, where: Term) -> None:
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, TVar) or isinstance(b, TVar):
            v, t = (a, b) if isinstance(a, TVar) else (b, a)
            if self.occurs(v, t):
                raise TypeMismatch(f"infinite type {v} = {self.zonk(t)} in {where}")
            self.subst[v.ident] = t
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.arg, b.arg, where)
            self.unify(a.res, b.res, where)
            return
        raise TypeMismatch(f"cannot match {self.zonk(a)} with {self.zonk(b)} in {where}")


def _check_usage(names: list[str], t: Term) -> None:
    """Every variable bound exactly once and used exactly once."""
    seen_binders = set(names)
    if len(seen_binders) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise ReusedVariable(f"context lists {dup} twice")

    def walk(t: Term, scope: frozenset) -> None:
        if isinstance(t, Var):
            if t.name not in scope:
                raise UnboundVariable(f"variable {t.name} is not bound")
        elif isinstance(t, App):
            walk(t.fn, scope)
            walk(t.arg, scope)
        else:
            uses = occurrences(t.body).count(t.var)
            if uses == 0:
                raise UnusedVariable(f"bound variable {t.var} is never used in {t}")
            walk(t.body, scope | {t.var})

    walk(t, frozenset(names))
    used = occurrences(t)
    for x in names:
        k = used.count(x)
        if k == 0:
            raise UnusedVariable(f"context variable {x} is never used")
    for x in set(used):
        if used.count(x) > 1:
            raise ReusedVariable(f"variable {x} is used {used.count(x)} times")

    def reuse(t: Term) -> None:
        if isinstance(t, App):
            reuse(t.fn)
            reuse(t.arg)
        elif isinstance(t, Lam):
            k = occurrences(t.body).count(t.var)
            if k > 1:
                raise ReusedVariable(f"bound variable {t.var} is used {k} times")
            reuse(t.body)

    reuse(t)


def _infer(ctx: list[tuple[str, LType]], t: Term, u: _Unifier) -> Derivation:
    names = [x for x, _ in ctx]
    if isinstance(t, Var):
        if names != [t.name]:
            raise SplitFailure(f"variable {t.name} cannot consume context {names}")
        return Derivation("var", tuple(ctx), t, ctx[0][1])

    if isinstance(t, Lam):
        body_order = occurrences(t.body)
        if body_order[-1] != t.var:
            raise NonRightmostAbstraction(
                f"{t.var} must be the last variable used in {t.body}, but {body_order[-1]} comes after it"
            )
        arg_type = t.annot if t.annot is not None else u.fresh()
        child = _infer(ctx + [(t.var, arg_type)], t.body, u)
        return Derivation("abs", tuple(ctx), t, Arrow(arg_type, child.type), (child,))

    fn_vars = set(occurrences(t.fn))
    arg_vars = set(occurrences(t.arg))
    k = len(fn_vars)
    if set(names[:k]) != fn_vars:
        if set(names[-k:] if k else []) == fn_vars and set(names[:-k]) == arg_vars:
            raise OutOfOrderUsage(
                f"in {t} the argument uses {sorted(arg_vars)} which precede {sorted(fn_vars)} in the context"
            )
        raise SplitFailure(f"context {names} cannot be cut into function and argument parts for {t}")
    fn_d = _infer(ctx[:k], t.fn, u)
    arg_d = _infer(ctx[k:], t.arg, u)
    res = u.fresh()
    fn_type = u.resolve(fn_d.type)
    if isinstance(fn_type, Base):
        raise TypeMismatch(f"{t.fn} has base type {fn_type} and cannot be applied")
    u.unify(fn_d.type, Arrow(arg_d.type, res), t)
    return Derivation("app", tuple(ctx), t, res, (fn_d, arg_d))


def _finish(d: Derivation, u: _Unifier, default: LType) -> Derivation:
    def close(t: LType) -> LType:
        t = u.zonk(t)
        if isinstance(t, TVar):
            return default
        if isinstance(t, Arrow):
            return Arrow(close(t.arg), close(t.res))
        return t

    def rebuild(n: Derivation) -> Derivation:
        return Derivation(
            n.rule,
            tuple((x, close(t)) for x, t in n.context),
            n.term,
            close(n.type),
            tuple(rebuild(c) for c in n.children),
        )

    return rebuild(d)


def typecheck(
    context: Context | Judgement | str | tuple = (),
    term: Term | str | None = None,
    expected: LType | str | None = None,
) -> Derivation:
    """Build the typing derivation of ``context |- term``.

    Accepts a :class:`Judgement`, its text form, or a context with a term.
    Context entries may carry ``None`` for an inferred type.  Type
    variables left unconstrained at the end become the base type ``o``.
    """
    if isinstance(context, str) and term is None:
        context = parse_judgement(context)
    if isinstance(context, Judgement):
        context, term = context.context, context.term
    if isinstance(term, str):
        term = parse_term(term)
    if isinstance(expected, str):
        expected = parse_type(expected)
    if term is None:
        raise TypeError("typecheck needs a term")

    u = _Unifier()
    ctx = [(x, t if t is not None else u.fresh()) for x, t in context]
    _check_usage([x for x, _ in ctx], term)
    d = _infer(ctx, term, u)
    if expected is not None:
        u.unify(d.type, expected, term)
    return _finish(d, u, Base(DEFAULT_BASE))


def format_derivation(d: Derivation) -> str:
    """Indented tree, conclusion first."""
    lines = []

    def walk(n: Derivation, depth: int) -> None:
        ctx = ", ".join(f"{x}:{t}" for x, t in n.context)
        lines.append(f"{'  ' * depth}{ctx} |- {n.term} : {n.type}   [{n.rule}]")
        for c in n.children:
            walk(c, depth + 1)

    walk(d, 0)
    return "\n".join(lines)


# -- compilation -----------------------------------------------------------------

def compile_derivation(d: Derivation, base_dims: Mapping[str, int] | None = None) -> Diagram:
    """The diagram ``dim(context) -> dim(type)`` denoted by a derivation."""
    if d.rule == "var":
        return identity_diagram(dimension(d.type, base_dims))
    if d.rule == "abs":
        (body,) = d.children
        gamma = sum(dimension(t, base_dims) for _, t in d.context)
        u = dimension(d.type.arg, base_dims)
        f = compile_derivation(body, base_dims)
        # right currying: bend the last input wire around to the right
        opened = tensor(identity_diagram(gamma), unit_eta(u))
        return compose(opened, tensor(f, identity_diagram(u)))
    fn_d, arg_d = d.children
    f = compile_derivation(fn_d, base_dims)
    g = compile_derivation(arg_d, base_dims)
    t = dimension(d.type, base_dims)
    u = dimension(arg_d.type, base_dims)
    # right application: feed g's output into the dual wires of f's output
    return compose(tensor(f, g), tensor(identity_diagram(t), counit_eps(u)))


# -- reduction -------------------------------------------------------------------

def _free_vars(t: Term) -> set[str]:
    return set(occurrences(t))


def _all_names(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return _all_names(t.fn) | _all_names(t.arg)
    return {t.var} | _all_names(t.body)


def _fresh_name(base: str, avoid: set[str]) -> str:
    for k in itertools.count(1):
        cand = f"{base}{k}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


def substitute(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding ``t[s/x]``."""
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, App):
        return App(substitute(t.fn, x, s), substitute(t.arg, x, s))
    if t.var == x:
        return t
    if t.var in _free_vars(s) and x in _free_vars(t.body):
        new = _fresh_name(t.var, _all_names(t.body) | _all_names(s) | {x})
        body = substitute(t.body, t.var, Var(new))
        return Lam(new, substitute(body, x, s), t.annot)
    return Lam(t.var, substitute(t.body, x, s), t.annot)


def beta_step(t: Term) -> Term | None:
    """One leftmost-outermost beta step, or ``None`` at a normal form."""
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return substitute(t.fn.body, t.fn.var, t.arg)
        fn = beta_step(t.fn)
        if fn is not None:
            return App(fn, t.arg)
        arg = beta_step(t.arg)
        if arg is not None:
            return App(t.fn, arg)
        return None
    if isinstance(t, Lam):
        body = beta_step(t.body)
        return None if body is None else Lam(t.var, body, t.annot)
    return None


def normalize(t: Term, max_steps: int = 10_000) -> Term:
    for _ in range(max_steps):
        nxt = beta_step(t)
        if nxt is None:
            return t
        t = nxt
    raise RuntimeError(f"no normal form within {max_steps} steps")


def soundness_check(
    context: Context | Judgement | str | tuple = (),
    term: Term | str | None = None,
    base_dims: Mapping[str, int] | None = None,
) -> bool:
    """Does a term compile to the same diagram as its normal form?"""
    d = typecheck(context, term)
    nf = normalize(d.term)
    d_nf = typecheck(d.context, nf, expected=d.type)
    return compile_derivation(d, base_dims) == compile_derivation(d_nf, base_dims)


# -- enumeration -----------------------------------------------------------------

def _terms(size: int, scope: tuple[str, ...]) -> Iterator[Term]:
    if size == 1:
        for x in scope:
            yield Var(x)
        return
    fresh = f"x{len(scope)}"
    for body in _terms(size - 1, scope + (fresh,)):
        yield Lam(fresh, body)
    for k in range(1, size - 1):
        for fn in _terms(k, scope):
            for arg in _terms(size - 1 - k, scope):
                yield App(fn, arg)


def enumerate_closed_terms(max_size: int, typable_only: bool = True) -> Iterator[Term]:
    """Closed terms up to ``max_size`` nodes, smallest first."""
    for size in range(1, max_size + 1):
        for t in _terms(size, ()):
            if not typable_only:
                yield t
                continue
            try:
                typecheck((), t)
            except LambdaTypeError:
                continue
            yield t
