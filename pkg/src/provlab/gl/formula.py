"""Propositional modal formulas over the core {atom, ff, ->, []}.

Nodes are hash-consed: building the same formula twice returns the same
object, so equality is identity and sets of formulas hash cheaply.  The
derived connectives (``Not``, ``And``, ``Or``, ``Iff``, ``Diamond``, ``Top``)
are constructor functions that normalize to the core.

Text syntax::

    atom    := [a-z][a-z0-9_]*         ff | tt
    unary   := "~" unary | "[]" unary | "<>" unary | atom | "(" formula ")"
    formula := iff;   iff := imp ("<->" imp)*;   imp := or ("->" imp)?
    or      := and ("|" and)*;   and := unary ("&" unary)*
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator


class ModalFormula:
    __slots__ = ("_key", "_size", "__weakref__")
    _table: dict = {}

    def __new__(cls, *args):
        key = (cls, *args)
        node = ModalFormula._table.get(key)
        if node is None:
            node = object.__new__(cls)
            node._init(*args)
            ModalFormula._table[key] = node
        return node

    def _init(self, *args):
        raise NotImplementedError

    def __reduce__(self):
        return (type(self), self._args())

    def _args(self) -> tuple:
        return ()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(map(repr, self._args()))})"

    def __str__(self) -> str:
        return to_text(self)

    @property
    def sort_key(self) -> tuple[int, str]:
        """Structural order, stable across processes."""
        return (self._size, self._key)

    @property
    def size(self) -> int:
        return self._size


class Atom(ModalFormula):
    __slots__ = ("name",)

    def _init(self, name: str):
        self.name = name
        self._size = 1
        self._key = "a" + name

    def _args(self):
        return (self.name,)


class _Bottom(ModalFormula):
    __slots__ = ()

    def _init(self):
        self._size = 1
        self._key = "0"


class Implies(ModalFormula):
    __slots__ = ("left", "right")

    def _init(self, left: ModalFormula, right: ModalFormula):
        self.left = left
        self.right = right
        self._size = left._size + right._size + 1
        self._key = f"({left._key}>{right._key})"

    def _args(self):
        return (self.left, self.right)


class Box(ModalFormula):
    __slots__ = ("body",)

    def _init(self, body: ModalFormula):
        self.body = body
        self._size = body._size + 1
        self._key = "#" + body._key

    def _args(self):
        return (self.body,)


Bottom = _Bottom()


# ------------------------------------------------------------ derived forms


def Not(f: ModalFormula) -> ModalFormula:
    return Implies(f, Bottom)


def Top() -> ModalFormula:
    return Implies(Bottom, Bottom)


def And(*fs: ModalFormula) -> ModalFormula:
    """n-ary conjunction, right-nested; ``And()`` is ``Top()``."""
    if not fs:
        return Top()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Not(Implies(f, Not(out)))
    return out


def Or(*fs: ModalFormula) -> ModalFormula:
    if not fs:
        return Bottom
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Implies(Not(f), out)
    return out


def Iff(a: ModalFormula, b: ModalFormula) -> ModalFormula:
    return And(Implies(a, b), Implies(b, a))


def Diamond(f: ModalFormula) -> ModalFormula:
    return Not(Box(Not(f)))


def is_not(f: ModalFormula) -> bool:
    return isinstance(f, Implies) and f.right is Bottom


def as_and(f: ModalFormula) -> tuple[ModalFormula, ModalFormula] | None:
    # Not(Implies(a, Not(b)))
    if is_not(f) and isinstance(f.left, Implies) and is_not(f.left.right):
        return f.left.left, f.left.right.left
    return None


def conjuncts(f: ModalFormula) -> list[ModalFormula]:
    out = []
    while (pair := as_and(f)) is not None:
        out.append(pair[0])
        f = pair[1]
    out.append(f)
    return out


def subformulas(f: ModalFormula) -> Iterator[ModalFormula]:
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        yield g
        if isinstance(g, Implies):
            stack += (g.right, g.left)
        elif isinstance(g, Box):
            stack.append(g.body)


def atoms(f: ModalFormula) -> list[str]:
    return sorted({g.name for g in subformulas(f) if isinstance(g, Atom)})


def count_boxes(f: ModalFormula) -> int:
    """Box occurrences in the tree (not deduplicated)."""
    if isinstance(f, Box):
        return 1 + count_boxes(f.body)
    if isinstance(f, Implies):
        return count_boxes(f.left) + count_boxes(f.right)
    return 0


def rename(f: ModalFormula, mapping: dict[str, str]) -> ModalFormula:
    if isinstance(f, Atom):
        return Atom(mapping.get(f.name, f.name))
    if isinstance(f, Implies):
        return Implies(rename(f.left, mapping), rename(f.right, mapping))
    if isinstance(f, Box):
        return Box(rename(f.body, mapping))
    return f


# ------------------------------------------------------------------ printer


_IMP, _OR, _AND, _UNARY = 1, 2, 3, 4


def _text(f: ModalFormula, need: int) -> str:
    if f is Bottom:
        return "ff"
    if isinstance(f, Atom):
        return f.name
    if f is Top():
        return "tt"
    if isinstance(f, Box):
        return "[]" + _text(f.body, _UNARY)
    pair = as_and(f)
    if pair is not None:
        s, level = f"{_text(pair[0], _UNARY)} & {_text(pair[1], _AND)}", _AND
    elif is_not(f):
        inner = f.left
        if isinstance(inner, Box) and is_not(inner.body):
            return "<>" + _text(inner.body.left, _UNARY)
        return "~" + _text(inner, _UNARY)
    elif is_not(f.left) and as_and(f.left) is None:
        s, level = f"{_text(f.left.left, _AND)} | {_text(f.right, _OR)}", _OR
    else:
        s, level = f"{_text(f.left, _OR)} -> {_text(f.right, _IMP)}", _IMP
    return s if level >= need else f"({s})"


def to_text(f: ModalFormula) -> str:
    return _text(f, 0)


# ------------------------------------------------------------------- parser


class ModalParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOK = re.compile(r"\s*(<->|->|\[\]|<>|[~&|()]|[A-Za-z][A-Za-z0-9_]*)")


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOK.match(text, pos)
        if not m:
            raise ModalParseError(f"unexpected character {text[pos]!r}", pos)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append(("", len(text)))
    return out


class _P:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self) -> str:
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise ModalParseError(msg, self.toks[self.i][1])

    def iff(self) -> ModalFormula:
        f = self.imp()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self) -> ModalFormula:
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.imp())
        return f

    def disj(self) -> ModalFormula:
        parts = [self.conj()]
        while self.peek() == "|":
            self.take()
            parts.append(self.conj())
        return Or(*parts) if len(parts) > 1 else parts[0]

    def conj(self) -> ModalFormula:
        parts = [self.unary()]
        while self.peek() == "&":
            self.take()
            parts.append(self.unary())
        return And(*parts) if len(parts) > 1 else parts[0]

    def unary(self) -> ModalFormula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "[]":
            self.take()
            return Box(self.unary())
        if tok == "<>":
            self.take()
            return Diamond(self.unary())
        if tok == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if tok == "ff":
            self.take()
            return Bottom
        if tok == "tt":
            self.take()
            return Top()
        if tok and (tok[0].isalpha()):
            self.take()
            return Atom(tok)
        self.fail(f"unexpected token {tok or 'end of input'!r}")


def parse_modal(text: str) -> ModalFormula:
    p = _P(text)
    f = p.iff()
    if p.peek() != "":
        p.fail(f"unexpected trailing token {p.peek()!r}")
    return f


def big_and(fs: Iterable[ModalFormula]) -> ModalFormula:
    return And(*fs)
