"""Modal renderings of the surprise-exam sentences and the incompleteness schema.

Provability from the announcement S is ``[](s -> A)``; the consistency of
T + S is ``~[]~s``.  The self-reference of S is a fresh atom ``s`` with the
defining axiom ``s <-> body`` imposed globally, ``s`` occurring in ``body``
only under boxes.  "m >= i" is rendered as "no exam on days 1..i-1".
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .goedel import Variant
from .gl import And, Atom, Bottom, Box, Iff, Implies, ModalFormula, Not, Or, Verdict
from .gl.formula import count_boxes
from .gl.prover import DEFAULT_BUDGET, global_consequence


class Query(str, Enum):
    SELF_REFUTING = "self-refuting"
    CON_CONDITIONAL_LAST_DAY = "con-conditional"
    # consistency of T + S + "m >= n" instead of T + S
    CON_RELATIVIZED_LAST_DAY = "con-conditional-relativized"


def day(i: int) -> Atom:
    return Atom(f"d{i}")


def exactly_one(ps: list[ModalFormula]) -> ModalFormula:
    at_least = Or(*ps)
    at_most = [Not(And(ps[i], ps[j])) for i in range(len(ps)) for j in range(i + 1, len(ps))]
    return And(at_least, *at_most)


@dataclass(frozen=True)
class ParadoxInstance:
    n: int
    variant: Variant
    s: Atom
    days: tuple[Atom, ...]
    body: ModalFormula

    @property
    def axiom(self) -> ModalFormula:
        return Iff(self.s, self.body)

    def provable_from_s(self, f: ModalFormula) -> ModalFormula:
        return Box(Implies(self.s, f))

    @property
    def consistent_with_s(self) -> ModalFormula:
        return Not(Box(Not(self.s)))

    def header(self) -> dict:
        return {"n": self.n, "variant": self.variant.value}


def at_least_day(days: tuple[Atom, ...], i: int) -> ModalFormula:
    """m >= i: the exam did not happen on days 1..i-1 (``tt`` for i = 1)."""
    return And(*(Not(days[j - 1]) for j in range(1, i)))


def build_paradox(n: int, variant: Variant | str = Variant.PLAIN, s_name: str = "s") -> ParadoxInstance:
    variant = Variant(variant)
    if n < 1:
        raise ValueError("day count must be at least 1")
    s = Atom(s_name)
    days = tuple(day(i) for i in range(1, n + 1))

    def predicts(i: int, j: int) -> ModalFormula:
        # Pr_{T,S}(m >= i -> m = j)
        g = at_least_day(days, i)
        claim = days[j - 1] if i == 1 else Implies(g, days[j - 1])
        return Box(Implies(s, claim))

    clauses = []
    for i in range(1, n + 1):
        ante = predicts(i, i)
        if variant is Variant.EXCLUSIVE:
            others = [Not(predicts(i, j)) for j in range(1, n + 1) if j != i]
            if others:
                ante = And(ante, *others)
        clauses.append(Implies(ante, Not(days[i - 1])))
    body = And(exactly_one(list(days)), *clauses)
    return ParadoxInstance(n, variant, s, days, body)


def body_box_count(p: ParadoxInstance) -> int:
    return count_boxes(p.body)


def paradox_goal(p: ParadoxInstance, query: Query | str) -> ModalFormula:
    query = Query(query)
    last = p.days[-1]
    if query is Query.SELF_REFUTING:
        return Not(p.s)
    if query is Query.CON_CONDITIONAL_LAST_DAY:
        return Implies(p.s, Implies(p.consistent_with_s, Not(last)))
    reaches_last = at_least_day(p.days, p.n)
    consistent = Not(p.provable_from_s(Not(reaches_last)))
    return Implies(p.s, Implies(consistent, Not(last)))


def paradox_verdict(p: ParadoxInstance, query: Query | str = Query.SELF_REFUTING,
                    mode: str = "gl", budget: int = DEFAULT_BUDGET) -> Verdict:
    return global_consequence([p.axiom], paradox_goal(p, query), mode, budget)


def blocked_step_goal(p: ParadoxInstance, i: int) -> ModalFormula:
    """Pr_{T,S}(Con(T,S) & m >= i -> m = i), the step the downward induction would need."""
    if not 1 <= i <= p.n:
        raise ValueError("day out of range")
    g = at_least_day(p.days, i)
    return p.provable_from_s(Implies(And(p.consistent_with_s, g), p.days[i - 1]))


def blocked_step_verdict(p: ParadoxInstance, i: int, mode: str = "gl", budget: int = DEFAULT_BUDGET) -> Verdict:
    return global_consequence([p.axiom], blocked_step_goal(p, i), mode, budget)


# ----------------------------------------------------- incompleteness schema


@dataclass(frozen=True)
class IncompletenessSchema:
    """k_x stands for "K(x) > L"; N plays the 2^(L+1)+1 candidates."""

    N: int
    atoms: tuple[Atom, ...]
    a1: ModalFormula
    a2: ModalFormula
    a3: ModalFormula

    @property
    def axioms(self) -> list[ModalFormula]:
        return [self.a1, self.a2, self.a3]

    def header(self) -> dict:
        return {"N": self.N}


def build_schema(N: int) -> IncompletenessSchema:
    if N < 1:
        raise ValueError("atom count must be at least 1")
    ks = tuple(Atom(f"k{x}") for x in range(N))
    con = Not(Box(Bottom))
    a1 = Implies(con, And(*(Not(Box(k)) for k in ks)))
    a2 = And(*(Implies(Not(k), Box(Not(k))) for k in ks))
    a3 = Or(*ks)
    return IncompletenessSchema(N, ks, a1, a2, a3)


def second_incompleteness_verdict(schema: IncompletenessSchema, mode: str = "gl",
                                  budget: int = DEFAULT_BUDGET) -> Verdict:
    """If the theory proves its own consistency, it proves ff."""
    goal = Implies(Box(Not(Box(Bottom))), Box(Bottom))
    return global_consequence(schema.axioms, goal, mode, budget)


def schema_inconsistency_verdict(schema: IncompletenessSchema, mode: str = "gl",
                                 budget: int = DEFAULT_BUDGET) -> Verdict:
    """Do the axioms alone force ``[]ff``?  (Theorem exactly when N = 1.)"""
    return global_consequence(schema.axioms, Box(Bottom), mode, budget)


def schema_consistency_check(schema: IncompletenessSchema, mode: str = "gl",
                             budget: int = DEFAULT_BUDGET) -> Verdict:
    """Negative control: for N >= 2 the schema does not by itself force ``[]ff``."""
    if schema.N < 2:
        raise ValueError("the negative control needs N >= 2")
    return schema_inconsistency_verdict(schema, mode, budget)


def modalized_in(f: ModalFormula, atom: Atom) -> bool:
    """True when every occurrence of ``atom`` in ``f`` lies under a box."""

    def walk(g: ModalFormula) -> bool:
        if g is atom:
            return False
        if isinstance(g, Implies):
            return walk(g.left) and walk(g.right)
        return True

    return walk(f)


__all__ = [
    "Query", "ParadoxInstance", "IncompletenessSchema", "build_paradox", "paradox_goal",
    "paradox_verdict", "blocked_step_goal", "blocked_step_verdict", "build_schema",
    "second_incompleteness_verdict", "schema_inconsistency_verdict", "schema_consistency_check",
    "modalized_in", "body_box_count", "exactly_one", "at_least_day",
]
