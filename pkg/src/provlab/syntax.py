"""First-order arithmetic syntax: terms, formulas, parser, printer, substitution.

Grammar (canonical form is what :func:`to_text` emits; the parser also
accepts extra whitespace and ``v 3`` for ``v3``)::

    term    := "0" | "S(" term ")" | "(" term " + " term ")"
             | "(" term " * " term ")" | "v" INT | "lit " INT
             | "sub(" term ", " term ")" | "imp(" term ", " term ")"
    unit    := term " = " term | term " <= " term
             | "KLe(" term ", " term ")" | "Pr(" term ")"
             | "~" unit | "forall v" INT ". " unit | "exists v" INT ". " unit
             | "(" formula ")"
    formula := unit | unit " & " unit | unit " | " unit | unit " -> " unit

Binary connectives never chain without parentheses, so every tree has
exactly one rendering.  Comparisons appearing as operands are parenthesized.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Union


def dec(n: int) -> str:
    """Decimal digits of n without the interpreter's int-to-str length cap."""
    return str(Decimal(n))


# --------------------------------------------------------------------- terms


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: Term


@dataclass(frozen=True)
class Plus:
    left: Term
    right: Term


@dataclass(frozen=True)
class Times:
    left: Term
    right: Term


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"variable index must be nonnegative, got {self.index}")


@dataclass(frozen=True)
class Lit:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"literal must be nonnegative, got {self.value}")


@dataclass(frozen=True)
class SubFn:
    """Uninterpreted term for the substitution function Sub(code, arg)."""

    code: Term
    arg: Term


@dataclass(frozen=True)
class ImpFn:
    """Uninterpreted term building the code of an implication from two codes."""

    ante: Term
    cons: Term


Term = Union[Zero, Succ, Plus, Times, Var, Lit, SubFn, ImpFn]


# ------------------------------------------------------------------ formulas


@dataclass(frozen=True)
class Eq:
    l: Term
    r: Term


@dataclass(frozen=True)
class Leq:
    l: Term
    r: Term


@dataclass(frozen=True)
class KLe:
    """``K(x) <= bound``; its negation reads ``K(x) > bound``."""

    x: Term
    bound: Term


@dataclass(frozen=True)
class Pr:
    code: Term


@dataclass(frozen=True)
class Not:
    f: Formula


@dataclass(frozen=True)
class And:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class Or:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class Implies:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class ForAll:
    var: int
    body: Formula


@dataclass(frozen=True)
class Exists:
    var: int
    body: Formula


Formula = Union[Eq, Leq, KLe, Pr, Not, And, Or, Implies, ForAll, Exists]

TERM_TYPES = (Zero, Succ, Plus, Times, Var, Lit, SubFn, ImpFn)
FORMULA_TYPES = (Eq, Leq, KLe, Pr, Not, And, Or, Implies, ForAll, Exists)

_BINARY_TERMS = {Plus: "+", Times: "*"}
_FN_TERMS = {SubFn: "sub", ImpFn: "imp"}
_COMPARISONS = {Eq: "=", Leq: "<="}
_CONNECTIVES = {And: "&", Or: "|", Implies: "->"}
_QUANTIFIERS = {ForAll: "forall", Exists: "exists"}


def term_children(t: Term) -> tuple:
    if isinstance(t, (Zero, Var, Lit)):
        return ()
    if isinstance(t, Succ):
        return (t.arg,)
    if isinstance(t, (Plus, Times)):
        return (t.left, t.right)
    if isinstance(t, SubFn):
        return (t.code, t.arg)
    return (t.ante, t.cons)


# ------------------------------------------------------------------- printer


def term_text(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Succ):
        return f"S({term_text(t.arg)})"
    if isinstance(t, Var):
        return f"v{t.index}"
    if isinstance(t, Lit):
        return f"lit {dec(t.value)}"
    if type(t) in _BINARY_TERMS:
        return f"({term_text(t.left)} {_BINARY_TERMS[type(t)]} {term_text(t.right)})"
    if type(t) in _FN_TERMS:
        a, b = term_children(t)
        return f"{_FN_TERMS[type(t)]}({term_text(a)}, {term_text(b)})"
    raise TypeError(f"not a term: {t!r}")


def _unit_text(f: Formula) -> str:
    text = to_text(f)
    if type(f) in _COMPARISONS or type(f) in _CONNECTIVES:
        return f"({text})"
    return text


def to_text(f: Formula) -> str:
    """Canonical rendering; ``parse(to_text(f)) == f``."""
    if type(f) in _COMPARISONS:
        return f"{term_text(f.l)} {_COMPARISONS[type(f)]} {term_text(f.r)}"
    if isinstance(f, KLe):
        return f"KLe({term_text(f.x)}, {term_text(f.bound)})"
    if isinstance(f, Pr):
        return f"Pr({term_text(f.code)})"
    if isinstance(f, Not):
        return "~" + _unit_text(f.f)
    if type(f) in _CONNECTIVES:
        return f"{_unit_text(f.l)} {_CONNECTIVES[type(f)]} {_unit_text(f.r)}"
    if type(f) in _QUANTIFIERS:
        return f"{_QUANTIFIERS[type(f)]} v{f.var}. {_unit_text(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


# -------------------------------------------------------------------- parser


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]+)|(?P<op><=|->|[()=+*,~&|.]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def fail(self, message: str):
        raise ParseError(message, self.peek()[2])

    def expect(self, value: str):
        kind, tok, _ = self.peek()
        if tok != value or kind == "eof":
            self.fail(f"expected {value!r}, found {tok or 'end of input'!r}")
        self.i += 1

    def integer(self) -> int:
        kind, tok, _ = self.peek()
        if kind != "int":
            self.fail(f"expected integer, found {tok or 'end of input'!r}")
        self.i += 1
        return int(Decimal(tok))

    def var_index(self) -> int:
        kind, tok, _ = self.peek()
        if kind == "name" and tok == "v":
            self.i += 1
            return self.integer()
        self.fail(f"expected variable, found {tok or 'end of input'!r}")

    def term(self) -> Term:
        kind, tok, _ = self.peek()
        if kind == "int":
            if tok != "0":
                self.fail("numerals other than 0 are written 'lit n'")
            self.i += 1
            return Zero()
        if tok == "(":
            self.i += 1
            left = self.term()
            op = self.peek()[1]
            if op not in ("+", "*"):
                self.fail("expected '+' or '*'")
            self.i += 1
            right = self.term()
            self.expect(")")
            return Plus(left, right) if op == "+" else Times(left, right)
        if kind == "name":
            if tok == "S":
                self.i += 1
                self.expect("(")
                arg = self.term()
                self.expect(")")
                return Succ(arg)
            if tok == "v":
                return Var(self.var_index())
            if tok == "lit":
                self.i += 1
                return Lit(self.integer())
            if tok in ("sub", "imp"):
                self.i += 1
                self.expect("(")
                a = self.term()
                self.expect(",")
                b = self.term()
                self.expect(")")
                return SubFn(a, b) if tok == "sub" else ImpFn(a, b)
        self.fail(f"expected term, found {tok or 'end of input'!r}")

    def unit(self) -> Formula:
        kind, tok, _ = self.peek()
        if tok == "~":
            self.i += 1
            return Not(self.unit())
        if kind == "name" and tok in ("forall", "exists"):
            self.i += 1
            var = self.var_index()
            self.expect(".")
            body = self.unit()
            return ForAll(var, body) if tok == "forall" else Exists(var, body)
        if kind == "name" and tok == "KLe":
            self.i += 1
            self.expect("(")
            x = self.term()
            self.expect(",")
            bound = self.term()
            self.expect(")")
            return KLe(x, bound)
        if kind == "name" and tok == "Pr":
            self.i += 1
            self.expect("(")
            code = self.term()
            self.expect(")")
            return Pr(code)
        if tok == "(":
            # a parenthesized formula or a comparison whose left term is parenthesized
            start = self.i
            try:
                self.i += 1
                f = self.formula()
                self.expect(")")
                return f
            except ParseError:
                self.i = start
        return self.comparison()

    def comparison(self) -> Formula:
        left = self.term()
        op = self.peek()[1]
        if op not in ("=", "<="):
            self.fail("expected '=' or '<='")
        self.i += 1
        right = self.term()
        return Eq(left, right) if op == "=" else Leq(left, right)

    def formula(self) -> Formula:
        left = self.unit()
        op = self.peek()[1]
        if op in ("&", "|", "->"):
            self.i += 1
            right = self.unit()
            return {"&": And, "|": Or, "->": Implies}[op](left, right)
        return left


def parse(text: str) -> Formula:
    """Parse a formula; raises :class:`ParseError` with the offending position."""
    p = _Parser(text)
    f = p.formula()
    if p.peek()[0] != "eof":
        p.fail(f"unexpected trailing input {p.peek()[1]!r}")
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek()[0] != "eof":
        p.fail(f"unexpected trailing input {p.peek()[1]!r}")
    return t


# ------------------------------------------------------------- substitution


def term_vars(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    out = frozenset()
    for c in term_children(t):
        out |= term_vars(c)
    return out


def free_vars(f: Formula) -> frozenset[int]:
    if isinstance(f, (Eq, Leq)):
        return term_vars(f.l) | term_vars(f.r)
    if isinstance(f, KLe):
        return term_vars(f.x) | term_vars(f.bound)
    if isinstance(f, Pr):
        return term_vars(f.code)
    if isinstance(f, Not):
        return free_vars(f.f)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.l) | free_vars(f.r)
    return free_vars(f.body) - {f.var}


def all_vars(f: Formula) -> frozenset[int]:
    """Every variable index occurring anywhere, bound or free."""
    if isinstance(f, (Eq, Leq)):
        return term_vars(f.l) | term_vars(f.r)
    if isinstance(f, KLe):
        return term_vars(f.x) | term_vars(f.bound)
    if isinstance(f, Pr):
        return term_vars(f.code)
    if isinstance(f, Not):
        return all_vars(f.f)
    if isinstance(f, (And, Or, Implies)):
        return all_vars(f.l) | all_vars(f.r)
    return all_vars(f.body) | {f.var}


def substitute_term(t: Term, var: int, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.index == var else t
    if isinstance(t, (Zero, Lit)):
        return t
    return type(t)(*(substitute_term(c, var, s) for c in term_children(t)))


def substitute(f: Formula, var: int, t: Term) -> Formula:
    """Replace free occurrences of ``Var(var)`` by ``t``, renaming binders to avoid capture.

    A capturing binder is renamed to one more than the largest index
    occurring in ``f``, ``t`` or ``var``.
    """
    if isinstance(f, (Eq, Leq)):
        return type(f)(substitute_term(f.l, var, t), substitute_term(f.r, var, t))
    if isinstance(f, KLe):
        return KLe(substitute_term(f.x, var, t), substitute_term(f.bound, var, t))
    if isinstance(f, Pr):
        return Pr(substitute_term(f.code, var, t))
    if isinstance(f, Not):
        return Not(substitute(f.f, var, t))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(substitute(f.l, var, t), substitute(f.r, var, t))
    # quantifier
    if f.var == var or var not in free_vars(f.body):
        return f
    body = f.body
    bound = f.var
    if bound in term_vars(t):
        fresh = 1 + max(all_vars(f) | term_vars(t) | {var})
        body = substitute(body, bound, Var(fresh))
        bound = fresh
    return type(f)(bound, substitute(body, var, t))


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    """Equality up to renaming of bound variables."""
    return _alpha(f, g, {}, {}, 0)


def _alpha_term(s: Term, t: Term, env_f: dict, env_g: dict) -> bool:
    if isinstance(s, Var) and isinstance(t, Var):
        a, b = env_f.get(s.index), env_g.get(t.index)
        if a is None and b is None:
            return s.index == t.index
        return a is not None and a == b
    if type(s) is not type(t):
        return False
    if isinstance(s, Lit):
        return s.value == t.value
    return all(_alpha_term(a, b, env_f, env_g) for a, b in zip(term_children(s), term_children(t)))


def _alpha(f: Formula, g: Formula, env_f: dict, env_g: dict, depth: int) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, (Eq, Leq)):
        return _alpha_term(f.l, g.l, env_f, env_g) and _alpha_term(f.r, g.r, env_f, env_g)
    if isinstance(f, KLe):
        return _alpha_term(f.x, g.x, env_f, env_g) and _alpha_term(f.bound, g.bound, env_f, env_g)
    if isinstance(f, Pr):
        return _alpha_term(f.code, g.code, env_f, env_g)
    if isinstance(f, Not):
        return _alpha(f.f, g.f, env_f, env_g, depth)
    if isinstance(f, (And, Or, Implies)):
        return _alpha(f.l, g.l, env_f, env_g, depth) and _alpha(f.r, g.r, env_f, env_g, depth)
    return _alpha(f.body, g.body, {**env_f, f.var: depth}, {**env_g, g.var: depth}, depth + 1)
