"""A toy Hilbert system over the quantifier-free arithmetic language.

Lines are justified by one of the three propositional schemata, a given
axiom of the theory, a Sigma_1 witness for ``K(x) <= L`` (a program of
length <= L that outputs x, re-run by the checker), or modus ponens.

Proofs serialize to bytes (line count, then per line the formula's Gödel
serialization followed by the justification).  All codes involved are
prefix-free, so comparing two proofs of equal size byte by byte is the
same as comparing their lines in order; :func:`enumerate_proofs` exploits
this to generate the canonical order (size, then bytes) lazily.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Union

from . import klab
from .goedel import serialize, write_varint
from .syntax import (
    And, Eq, Exists, ForAll, Formula, Implies, KLe, Lit, Not, Or, Zero, parse, to_text,
)

# ---------------------------------------------------------------- schemata


def schema_instance(schema: int, a: Formula, b: Formula, c: Formula | None = None) -> Formula:
    if schema == 1:
        return Implies(a, Implies(b, a))
    if schema == 2:
        if c is None:
            raise ValueError("schema 2 needs three formulas")
        return Implies(Implies(a, Implies(b, c)), Implies(Implies(a, b), Implies(a, c)))
    if schema == 3:
        return Implies(Implies(Not(b), Not(a)), Implies(a, b))
    raise ValueError(f"unknown schema {schema}")


# ----------------------------------------------------------- justifications


@dataclass(frozen=True)
class PropAxiom:
    schema: int
    a: Formula
    b: Formula
    c: Formula | None = None

    def code(self) -> bytes:
        return bytes((0x02, self.schema))

    def to_dict(self) -> dict:
        out = {"rule": "axiom", "schema": self.schema, "A": to_text(self.a), "B": to_text(self.b)}
        if self.c is not None:
            out["C"] = to_text(self.c)
        return out


@dataclass(frozen=True)
class Given:
    index: int

    def code(self) -> bytes:
        out = bytearray((0x01,))
        write_varint(self.index, out)
        return bytes(out)

    def to_dict(self) -> dict:
        return {"rule": "given", "index": self.index}


@dataclass(frozen=True)
class Sigma1Witness:
    x: int
    L: int
    program: str

    def code(self) -> bytes:
        out = bytearray((0x03,))
        write_varint(self.x, out)
        write_varint(self.L, out)
        write_varint(len(self.program), out)
        if self.program:
            n = len(self.program)
            out += int(self.program, 2).to_bytes((n + 7) // 8, "big")
        return bytes(out)

    def to_dict(self) -> dict:
        return {"rule": "sigma1", "x": self.x, "L": self.L, "program": self.program}


@dataclass(frozen=True)
class ModusPonens:
    """From line ``i`` = (line ``j`` -> this) and line ``j``."""

    i: int
    j: int

    def code(self) -> bytes:
        out = bytearray((0x04,))
        write_varint(self.i, out)
        write_varint(self.j, out)
        return bytes(out)

    def to_dict(self) -> dict:
        return {"rule": "mp", "i": self.i, "j": self.j}


Justification = Union[PropAxiom, Given, Sigma1Witness, ModusPonens]


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Justification

    def code(self) -> bytes:
        return serialize(self.formula) + self.just.code()


@dataclass(frozen=True)
class HilbertProof:
    lines: tuple[Line, ...]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula

    def serialize(self) -> bytes:
        out = bytearray()
        write_varint(len(self.lines), out)
        for line in self.lines:
            out += line.code()
        return bytes(out)

    def to_json_lines(self) -> list[dict]:
        return [{"formula": to_text(l.formula), "just": l.just.to_dict()} for l in self.lines]

    def to_json(self) -> str:
        return json.dumps(self.to_json_lines())

    def __str__(self) -> str:
        rows = []
        for k, line in enumerate(self.lines):
            j = line.just.to_dict()
            rule = j.pop("rule")
            args = ", ".join(f"{key}={val}" for key, val in j.items())
            rows.append(f"{k:>3}. {to_text(line.formula)}    [{rule} {args}]")
        return "\n".join(rows)


# ------------------------------------------------------------------ theory


@dataclass(frozen=True)
class TheoryConfig:
    given_axioms: tuple[Formula, ...] = ()
    sigma1_rule_enabled: bool = False
    max_lines: int = 3
    max_formula_bytes: int = 16
    # largest L for which the enumerator proposes Sigma_1 witness lines
    sigma1_max_bound: int = 4
    # formulas substituted into the propositional schemata; None: subformulas of
    # the given axioms plus 0 = 0
    instance_pool: tuple[Formula, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "given_axioms", tuple(self.given_axioms))
        if self.max_lines < 1 or self.max_formula_bytes < 1 or self.sigma1_max_bound < 0:
            raise ValueError("enumeration bounds must be positive")

    def pool(self) -> list[Formula]:
        if self.instance_pool is not None:
            found = list(self.instance_pool)
        else:
            found = [Eq(Zero(), Zero())]
            for ax in self.given_axioms:
                found.extend(_subformulas(ax))
        unique = {serialize(f): f for f in found}
        return [unique[k] for k in sorted(unique)]


def load_axioms(path) -> tuple[Formula, ...]:
    """One formula per non-blank line; ``#`` starts a comment line."""
    with open(path, encoding="utf-8") as fh:
        return tuple(
            parse(line) for line in fh if line.strip() and not line.lstrip().startswith("#")
        )


def _subformulas(f: Formula) -> list[Formula]:
    out = [f]
    if isinstance(f, Not):
        out += _subformulas(f.f)
    elif isinstance(f, (And, Or, Implies)):
        out += _subformulas(f.l) + _subformulas(f.r)
    elif isinstance(f, (ForAll, Exists)):
        out += _subformulas(f.body)
    return out


# ----------------------------------------------------------------- checker


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    line: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "line": self.line, "reason": self.reason}


def _check_line(t: TheoryConfig, lines: tuple[Line, ...], k: int) -> str | None:
    line = lines[k]
    f, j = line.formula, line.just
    if isinstance(j, PropAxiom):
        if j.schema not in (1, 2, 3):
            return f"unknown schema {j.schema}"
        if j.schema == 2 and j.c is None:
            return "schema 2 instance lacks C"
        if schema_instance(j.schema, j.a, j.b, j.c) != f:
            return f"not an instance of schema {j.schema}"
        return None
    if isinstance(j, Given):
        if not 0 <= j.index < len(t.given_axioms):
            return f"no given axiom {j.index}"
        if t.given_axioms[j.index] != f:
            return f"formula differs from given axiom {j.index}"
        return None
    if isinstance(j, Sigma1Witness):
        if not t.sigma1_rule_enabled:
            return "Sigma_1 witness rule disabled"
        if f != KLe(Lit(j.x), Lit(j.L)):
            return "witness line must state KLe(lit x, lit L)"
        if len(j.program) > j.L:
            return f"program longer than {j.L} bits"
        if klab.run(j.program) != j.x:
            return f"program does not output {j.x}"
        return None
    if isinstance(j, ModusPonens):
        if not (0 <= j.i < k and 0 <= j.j < k):
            return "modus ponens must cite earlier lines"
        major = lines[j.i].formula
        if not isinstance(major, Implies):
            return f"line {j.i} is not an implication"
        if major.l != lines[j.j].formula or major.r != f:
            return f"line {j.i} is not (line {j.j} -> this line)"
        return None
    return "unknown justification"


def check(t: TheoryConfig, p: HilbertProof) -> CheckResult:
    if not p.lines:
        return CheckResult(False, None, "empty proof")
    for k in range(len(p.lines)):
        reason = _check_line(t, p.lines, k)
        if reason is not None:
            return CheckResult(False, k, reason)
    return CheckResult(True)


# -------------------------------------------------------------- enumeration


def _line_menu(t: TheoryConfig) -> list[Line]:
    """Every line not depending on earlier lines, within the formula bound."""
    menu = [Line(f, Given(i)) for i, f in enumerate(t.given_axioms)]
    pool = t.pool()
    for a in pool:
        for b in pool:
            menu.append(Line(schema_instance(1, a, b), PropAxiom(1, a, b)))
            menu.append(Line(schema_instance(3, a, b), PropAxiom(3, a, b)))
            for c in pool:
                menu.append(Line(schema_instance(2, a, b, c), PropAxiom(2, a, b, c)))
    if t.sigma1_rule_enabled:
        for prog in klab.programs(t.sigma1_max_bound):
            x = klab.run(prog)
            for L in range(len(prog), t.sigma1_max_bound + 1):
                menu.append(Line(KLe(Lit(x), Lit(L)), Sigma1Witness(x, L, prog.bits)))
    menu = [l for l in menu if len(serialize(l.formula)) <= t.max_formula_bytes]
    return sorted(menu, key=Line.code)


@dataclass
class _Budget:
    left: int
    inspected: int = 0


def _size_prefix(count: int) -> int:
    out = bytearray()
    write_varint(count, out)
    return len(out)


def enumerate_proofs(t: TheoryConfig, budget: int) -> Iterator[HilbertProof]:
    """Valid proofs within the bounds in canonical order, inspecting at most ``budget`` candidates.

    A candidate is a sequence of lines drawn from the static menu or of
    modus-ponens lines citing earlier lines (formula: the consequent of the
    cited implication); each complete candidate is checked before it is yielded.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    menu = _line_menu(t)
    coded = [(l.code(), l) for l in menu]
    if not coded:
        return
    min_line = min(len(c) for c, _ in coded)
    mp_line = t.max_formula_bytes + 1 + 2 * _size_prefix(t.max_lines)
    max_line = max(mp_line, max(len(c) for c, _ in coded))
    state = _Budget(budget)
    max_size = _size_prefix(t.max_lines) + t.max_lines * max_line
    for size in range(1, max_size + 1):
        for count in range(1, t.max_lines + 1):
            remaining = size - _size_prefix(count)
            if remaining < count * min_line:
                continue
            yield from _extend(t, coded, (), count, remaining, min_line, state)
            if state.left <= 0:
                return


def _extend(t, coded, prefix: tuple[Line, ...], count: int, remaining: int, min_line: int, state: _Budget):
    if state.left <= 0:
        return
    pos = len(prefix)
    if pos == count:
        if remaining == 0:
            state.left -= 1
            state.inspected += 1
            proof = HilbertProof(prefix)
            if check(t, proof):
                yield proof
        return
    slots_after = count - pos - 1
    options = list(coded)
    for i in range(pos):
        major = prefix[i].formula
        if not isinstance(major, Implies):
            continue
        if len(serialize(major.r)) > t.max_formula_bytes:
            continue
        for j in range(pos):
            line = Line(major.r, ModusPonens(i, j))
            options.append((line.code(), line))
    options.sort(key=lambda pair: pair[0])
    for code, line in options:
        rest = remaining - len(code)
        if rest < slots_after * min_line or (slots_after == 0 and rest != 0):
            continue
        yield from _extend(t, coded, prefix + (line,), count, rest, min_line, state)
        if state.left <= 0:
            return


def _is_incompressibility_claim(f: Formula, L: int) -> int | None:
    """x when f is ~KLe(lit x, lit L') with L' >= L."""
    if isinstance(f, Not) and isinstance(f.f, KLe):
        x, bound = f.f.x, f.f.bound
        if isinstance(x, Lit) and isinstance(bound, Lit) and bound.value >= L:
            return x.value
    return None


def chaitin_extract(t: TheoryConfig, L: int, budget: int) -> tuple[int, HilbertProof] | None:
    """Output the x of the first proof of some "K(x) > L'" with L' >= L."""
    for proof in enumerate_proofs(t, budget):
        x = _is_incompressibility_claim(proof.conclusion, L)
        if x is not None:
            return x, proof
    return None


def inconsistency_scan(t: TheoryConfig, budget: int) -> tuple[HilbertProof, HilbertProof] | None:
    """First pair (proof of F, proof of ~F) met while scanning the enumeration."""
    seen: dict[Formula, HilbertProof] = {}
    for proof in enumerate_proofs(t, budget):
        f = proof.conclusion
        if f in seen:
            continue
        if Not(f) in seen:
            return proof, seen[Not(f)]
        if isinstance(f, Not) and f.f in seen:
            return seen[f.f], proof
        seen[f] = proof
    return None
