"""Gödel numbering, the meta-level Sub function, and the diagonal construction.

A formula is serialized in prefix order with a one-byte opcode per node;
integer payloads (literal values, variable indices) follow their opcode as
LEB128 varints.  The Gödel number is the big-endian reading of those bytes.
Every formula serialization starts with an opcode >= 0x10, so the leading
byte is never zero and the integer determines the byte string.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .syntax import (
    And, Eq, Exists, ForAll, Formula, ImpFn, Implies, KLe, Leq, Lit, Not, Or,
    Plus, Pr, Succ, SubFn, Term, Times, Var, Zero, dec, free_vars, substitute,
)

TEMPLATE_VAR = 1  # x in Q(x)
DAY_VAR = 0  # m, the exam day

TERM_OPS = {Zero: 0x01, Succ: 0x02, Plus: 0x03, Times: 0x04, Lit: 0x05, Var: 0x06, SubFn: 0x07, ImpFn: 0x08}
FORMULA_OPS = {Eq: 0x10, Leq: 0x11, Pr: 0x12, KLe: 0x13, Not: 0x20, And: 0x21, Or: 0x22,
               Implies: 0x23, ForAll: 0x24, Exists: 0x25}
_TERM_BY_OP = {v: k for k, v in TERM_OPS.items()}
_FORMULA_BY_OP = {v: k for k, v in FORMULA_OPS.items()}


class DecodeError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class DiagonalError(ValueError):
    pass


@dataclass(frozen=True)
class GoedelNumber:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("Gödel numbers are nonnegative")

    def to_bytes(self) -> bytes:
        return self.value.to_bytes((self.value.bit_length() + 7) // 8, "big")

    @property
    def hex(self) -> str:
        return "0x" + self.to_bytes().hex()

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return dec(self.value)


# -------------------------------------------------------------- varint codec


def write_varint(n: int, out: bytearray) -> None:
    if n < 0:
        raise ValueError("varints are unsigned")
    while True:
        group = n & 0x7F
        n >>= 7
        if n:
            out.append(group | 0x80)
        else:
            out.append(group)
            return


def read_varint(data: bytes, pos: int) -> tuple[int, int]:
    start = pos
    value = 0
    shift = 0
    while True:
        if pos >= len(data):
            raise DecodeError("truncated varint", start)
        b = data[pos]
        pos += 1
        value |= (b & 0x7F) << shift
        shift += 7
        if not b & 0x80:
            if b == 0 and pos - start > 1:
                # trailing zero group: overlong form, would break injectivity
                raise DecodeError("overlong varint", start)
            return value, pos


# --------------------------------------------------------------- serializer


def _write_term(t: Term, out: bytearray) -> None:
    out.append(TERM_OPS[type(t)])
    if isinstance(t, Lit):
        write_varint(t.value, out)
    elif isinstance(t, Var):
        write_varint(t.index, out)
    elif isinstance(t, Succ):
        _write_term(t.arg, out)
    elif isinstance(t, (Plus, Times)):
        _write_term(t.left, out)
        _write_term(t.right, out)
    elif isinstance(t, SubFn):
        _write_term(t.code, out)
        _write_term(t.arg, out)
    elif isinstance(t, ImpFn):
        _write_term(t.ante, out)
        _write_term(t.cons, out)


def _write_formula(f: Formula, out: bytearray) -> None:
    out.append(FORMULA_OPS[type(f)])
    if isinstance(f, (Eq, Leq)):
        _write_term(f.l, out)
        _write_term(f.r, out)
    elif isinstance(f, KLe):
        _write_term(f.x, out)
        _write_term(f.bound, out)
    elif isinstance(f, Pr):
        _write_term(f.code, out)
    elif isinstance(f, Not):
        _write_formula(f.f, out)
    elif isinstance(f, (And, Or, Implies)):
        _write_formula(f.l, out)
        _write_formula(f.r, out)
    else:
        write_varint(f.var, out)
        _write_formula(f.body, out)


def serialize(f: Formula) -> bytes:
    out = bytearray()
    _write_formula(f, out)
    return bytes(out)


def _read_term(data: bytes, pos: int) -> tuple[Term, int]:
    if pos >= len(data):
        raise DecodeError("truncated term", pos)
    op = data[pos]
    cls = _TERM_BY_OP.get(op)
    if cls is None:
        raise DecodeError(f"invalid term opcode 0x{op:02x}", pos)
    pos += 1
    if cls is Zero:
        return Zero(), pos
    if cls in (Lit, Var):
        n, pos = read_varint(data, pos)
        return cls(n), pos
    if cls is Succ:
        arg, pos = _read_term(data, pos)
        return Succ(arg), pos
    a, pos = _read_term(data, pos)
    b, pos = _read_term(data, pos)
    return cls(a, b), pos


def _read_formula(data: bytes, pos: int) -> tuple[Formula, int]:
    if pos >= len(data):
        raise DecodeError("truncated formula", pos)
    op = data[pos]
    cls = _FORMULA_BY_OP.get(op)
    if cls is None:
        raise DecodeError(f"invalid formula opcode 0x{op:02x}", pos)
    pos += 1
    if cls in (Eq, Leq, KLe):
        a, pos = _read_term(data, pos)
        b, pos = _read_term(data, pos)
        return cls(a, b), pos
    if cls is Pr:
        code, pos = _read_term(data, pos)
        return Pr(code), pos
    if cls is Not:
        sub, pos = _read_formula(data, pos)
        return Not(sub), pos
    if cls in (And, Or, Implies):
        left, pos = _read_formula(data, pos)
        right, pos = _read_formula(data, pos)
        return cls(left, right), pos
    var, pos = read_varint(data, pos)
    body, pos = _read_formula(data, pos)
    return cls(var, body), pos


def deserialize(data: bytes) -> Formula:
    if not data:
        raise DecodeError("empty serialization (leading byte 0x00 invalid)", 0)
    f, pos = _read_formula(data, 0)
    if pos != len(data):
        raise DecodeError("trailing bytes after formula", pos)
    return f


def encode(f: Formula) -> GoedelNumber:
    return GoedelNumber(int.from_bytes(serialize(f), "big"))


def decode(n: GoedelNumber | int) -> Formula:
    """Inverse of :func:`encode`; raises :class:`DecodeError` naming the byte offset."""
    value = n.value if isinstance(n, GoedelNumber) else n
    if value < 0:
        raise DecodeError("negative code", 0)
    return deserialize(GoedelNumber(value).to_bytes())


# ------------------------------------------------------------ Sub and ⇒ codes


def sub_meta(a: GoedelNumber, b: int) -> GoedelNumber:
    """Code of A(b) given the code of A(x), x being ``Var(TEMPLATE_VAR)``."""
    template = decode(a)
    if TEMPLATE_VAR not in free_vars(template):
        raise DiagonalError(f"v{TEMPLATE_VAR} is not free in the decoded formula")
    return encode(substitute(template, TEMPLATE_VAR, Lit(int(b))))


def imp_code(a: GoedelNumber, b: GoedelNumber) -> GoedelNumber:
    return encode(Implies(decode(a), decode(b)))


def v_formula(i: int, j: int, n: int) -> Formula:
    """``m >= i -> m = j`` with m as ``Var(DAY_VAR)``."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"day indices must lie in 1..{n}, got i={i}, j={j}")
    m = Var(DAY_VAR)
    return Implies(Leq(Lit(i), m), Eq(m, Lit(j)))


def v_code(i: int, j: int, n: int) -> GoedelNumber:
    return encode(v_formula(i, j, n))


# ---------------------------------------------------------- diagonalization


class Variant(str, Enum):
    PLAIN = "plain"
    EXCLUSIVE = "exclusive"


def _conj(parts: list[Formula]) -> Formula:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def _disj(parts: list[Formula]) -> Formula:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def build_template(n: int, variant: Variant | str = Variant.EXCLUSIVE) -> Formula:
    """The template Q(x) for an n-day week.

    ``m`` in 1..n, and for each day i: if the sentence with code Sub(x, x)
    provably yields ``m >= i -> m = i`` (and, for the exclusive variant, yields
    no such prediction for another day j), then ``m != i``.
    """
    variant = Variant(variant)
    if n < 1:
        raise ValueError("day count must be at least 1")
    m = Var(DAY_VAR)
    x = Var(TEMPLATE_VAR)
    self_code = SubFn(x, x)

    def predicts(i: int, j: int) -> Formula:
        return Pr(ImpFn(self_code, Lit(v_code(i, j, n).value)))

    in_week = _disj([Eq(m, Lit(i)) for i in range(1, n + 1)])
    clauses = []
    for i in range(1, n + 1):
        ante = predicts(i, i)
        if variant is Variant.EXCLUSIVE and n > 1:
            ante = And(ante, _conj([Not(predicts(i, j)) for j in range(1, n + 1) if j != i]))
        clauses.append(Implies(ante, Not(Eq(m, Lit(i)))))
    return _conj([in_week] + clauses)


@dataclass(frozen=True)
class DiagonalResult:
    template_code: GoedelNumber
    sentence: Formula
    sentence_code: GoedelNumber

    @property
    def q(self) -> GoedelNumber:
        return self.template_code

    @property
    def s(self) -> GoedelNumber:
        return self.sentence_code


def diagonalize(template: Formula) -> DiagonalResult:
    """Build S = Q(q) where q is the code of Q(x), and check s = Sub(q, q)."""
    if TEMPLATE_VAR not in free_vars(template):
        raise DiagonalError(f"template must have v{TEMPLATE_VAR} free")
    q = encode(template)
    sentence = substitute(template, TEMPLATE_VAR, Lit(q.value))
    s = encode(sentence)
    if sub_meta(q, q.value) != s:
        raise AssertionError("fixed-point identity s = Sub(q, q) failed")
    return DiagonalResult(q, sentence, s)
