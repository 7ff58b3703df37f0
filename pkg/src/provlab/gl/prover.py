"""Backward proof search for GL (and K4) with certificates both ways.

Sequents are pairs of frozensets of hash-consed formulas.  Propositional
rules are the invertible G3 rules; once a sequent is saturated (only atoms,
``ff`` and boxes remain) each boxed formula on the right is tried with the
box rule

    GL:  B, []B (for []B on the left), []A  =>  A      concludes   ... => []A
    K4:  B, []B (for []B on the left)       =>  A

GL search terminates because the premise has strictly more boxed formulas
on the left.  K4 search uses a loop check on box-rule premises.  A failed
saturated sequent becomes a world of the countermodel whose successors are
the worlds refuting its box-rule premises.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Union

from .formula import Atom, Box, Bottom, Implies, ModalFormula, And, to_text
from .kripke import KripkeModel, model_check, transitive_closure

DEFAULT_BUDGET = 10**7
MODES = ("gl", "k4")


class ResourceLimit(RuntimeError):
    """Raised when a search exceeds its node budget."""

    def __init__(self, budget: int, nodes: int, memo_size: int, max_modal_depth: int):
        super().__init__(
            f"node budget {budget} exhausted after {nodes} nodes "
            f"(memo entries {memo_size}, deepest box nesting {max_modal_depth})"
        )
        self.budget = budget
        self.nodes = nodes
        self.memo_size = memo_size
        self.max_modal_depth = max_modal_depth

    def diagnostics(self) -> dict:
        return {
            "budget": self.budget,
            "nodes": self.nodes,
            "memo_entries": self.memo_size,
            "max_modal_depth": self.max_modal_depth,
        }


@dataclass(frozen=True)
class Sequent:
    left: frozenset
    right: frozenset

    def __str__(self) -> str:
        def side(fs):
            return ", ".join(to_text(f) for f in sorted(fs, key=lambda f: f.sort_key))

        return f"{side(self.left)} => {side(self.right)}"


@dataclass(frozen=True, eq=False)
class Derivation:
    sequent: Sequent
    rule: str
    principal: ModalFormula | None = None
    premises: tuple[Derivation, ...] = ()

    def nodes(self) -> list[Derivation]:
        """Distinct nodes in depth-first preorder, root first."""
        seen = {}
        stack = [self]
        while stack:
            d = stack.pop()
            if id(d) in seen:
                continue
            seen[id(d)] = d
            stack.extend(reversed(d.premises))
        return list(seen.values())

    def height(self) -> int:
        memo: dict[int, int] = {}

        def h(d: Derivation) -> int:
            if id(d) not in memo:
                memo[id(d)] = 1 + max((h(p) for p in d.premises), default=0)
            return memo[id(d)]

        return _deep(h, self)

    def to_dict(self) -> dict:
        nodes = self.nodes()
        ids = {id(d): i for i, d in enumerate(nodes)}
        return {
            "root": 0,
            "nodes": [
                {
                    "id": ids[id(d)],
                    "sequent": str(d.sequent),
                    "rule": d.rule,
                    "principal": None if d.principal is None else to_text(d.principal),
                    "premises": [ids[id(p)] for p in d.premises],
                }
                for d in nodes
            ],
        }


@dataclass(frozen=True)
class Theorem:
    formula: ModalFormula
    derivation: Derivation
    nodes: int
    mode: str = "gl"

    is_theorem = True
    kind = "theorem"

    def to_dict(self, include_trace: bool = True) -> dict:
        out = {
            "verdict": self.kind,
            "mode": self.mode,
            "formula": to_text(self.formula),
            "search_nodes": self.nodes,
            "trace_size": len(self.derivation.nodes()),
        }
        if include_trace:
            out["trace"] = self.derivation.to_dict()
        return out


@dataclass(frozen=True)
class NonTheorem:
    formula: ModalFormula
    model: KripkeModel
    nodes: int
    mode: str = "gl"

    is_theorem = False
    kind = "non-theorem"

    def to_dict(self, include_trace: bool = True) -> dict:
        return {
            "verdict": self.kind,
            "mode": self.mode,
            "formula": to_text(self.formula),
            "search_nodes": self.nodes,
            "countermodel": self.model.to_dict(),
        }


Verdict = Union[Theorem, NonTheorem]


class _World:
    __slots__ = ("sequent", "children")

    def __init__(self, sequent: Sequent):
        self.sequent = sequent
        self.children: list[_World] = []


def _deep(fn, *args):
    # proof search recursion follows formula depth; give it room
    limit = sys.getrecursionlimit()
    if limit < 100_000:
        sys.setrecursionlimit(100_000)
    try:
        return fn(*args)
    finally:
        sys.setrecursionlimit(limit)


def _first(fs):
    return min(fs, key=lambda f: f.sort_key)


class _Search:
    def __init__(self, mode: str, budget: int):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.mode = mode
        self.budget = budget
        self.nodes = 0
        self.memo: dict[tuple[frozenset, frozenset], Derivation | _World] = {}
        # K4 loop check: premise key -> stack index; per index, the saturated world on the path
        self.premise_index: dict[tuple[frozenset, frozenset], int] = {}
        self.path_worlds: list[_World | None] = []
        self.max_depth = 0

    def prove(self, left: frozenset, right: frozenset) -> tuple[Derivation | _World, float]:
        """Return (derivation or refuting world, lowest open premise index the result relies on)."""
        key = (left, right)
        hit = self.memo.get(key)
        if hit is not None:
            return hit, math.inf
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceLimit(self.budget, self.nodes, len(self.memo), self.max_depth)
        result, low = self._expand(left, right)
        if isinstance(result, Derivation) or low >= len(self.path_worlds):
            self.memo[key] = result
        return result, low

    def _expand(self, left: frozenset, right: frozenset):
        seq = Sequent(left, right)
        if Bottom in left:
            return Derivation(seq, "bottom", Bottom), math.inf
        common = left & right
        if common:
            return Derivation(seq, "axiom", _first(common)), math.inf

        imps_right = [f for f in right if isinstance(f, Implies)]
        if imps_right:
            p = _first(imps_right)
            sub, low = self.prove(left | {p.left}, (right - {p}) | {p.right})
            if isinstance(sub, Derivation):
                return Derivation(seq, "imp_right", p, (sub,)), math.inf
            return sub, low

        imps_left = [f for f in left if isinstance(f, Implies)]
        if imps_left:
            redundant = [f for f in imps_left if f.right in left or f.left in right]
            if redundant:
                sub, low = self.prove(left.difference(redundant), right)
                if isinstance(sub, Derivation):
                    return Derivation(seq, "weaken", None, (sub,)), math.inf
                return sub, low
            # prefer a rule instance whose other premise closes at once
            cheap = [f for f in imps_left if f.left in left or f.right is Bottom]
            p = _first(cheap or imps_left)
            rest = left - {p}
            first, low1 = self.prove(rest, right | {p.left})
            if not isinstance(first, Derivation):
                return first, low1
            second, low2 = self.prove(rest | {p.right}, right)
            if not isinstance(second, Derivation):
                return second, low2
            return Derivation(seq, "imp_left", p, (first, second)), math.inf

        return self._saturated(seq)

    def _saturated(self, seq: Sequent):
        left, right = seq.left, seq.right
        boxes_left = [f for f in left if isinstance(f, Box)]
        context = frozenset(boxes_left) | frozenset(f.body for f in boxes_left)
        world = _World(seq)
        if self.path_worlds:
            saved = self.path_worlds[-1]
            self.path_worlds[-1] = world
        low = math.inf
        try:
            for target in sorted((f for f in right if isinstance(f, Box)), key=lambda f: f.sort_key):
                if self.mode == "gl":
                    prem = (context | {target}, frozenset((target.body,)))
                else:
                    prem = (context, frozenset((target.body,)))
                looped = self.premise_index.get(prem)
                if looped is not None:
                    world.children.append(self.path_worlds[looped])
                    low = min(low, looped)
                    continue
                self.premise_index[prem] = len(self.path_worlds)
                self.path_worlds.append(None)
                self.max_depth = max(self.max_depth, len(self.path_worlds))
                try:
                    sub, sub_low = self.prove(*prem)
                finally:
                    self.path_worlds.pop()
                    del self.premise_index[prem]
                if isinstance(sub, Derivation):
                    rule = "gl_box" if self.mode == "gl" else "k4_box"
                    return Derivation(seq, rule, target, (sub,)), math.inf
                world.children.append(sub)
                low = min(low, sub_low)
        finally:
            if self.path_worlds:
                self.path_worlds[-1] = saved
        return world, low


# ----------------------------------------------------------- model assembly


def _to_model(root: _World) -> KripkeModel:
    order: list[_World] = []
    index: dict[int, int] = {}
    stack = [root]
    while stack:
        w = stack.pop(0)
        if id(w) in index:
            continue
        index[id(w)] = len(order)
        order.append(w)
        stack.extend(w.children)
    edges = [(index[id(w)], index[id(c)]) for w in order for c in w.children]
    valuation: dict[str, set[int]] = {}
    for i, w in enumerate(order):
        for f in w.sequent.left:
            if isinstance(f, Atom):
                valuation.setdefault(f.name, set()).add(i)
        for f in w.sequent.right:
            if isinstance(f, Atom):
                valuation.setdefault(f.name, set())
    return KripkeModel(len(order), transitive_closure(len(order), edges), valuation, 0)


def minimize(model: KripkeModel, f: ModalFormula) -> KripkeModel:
    """Greedily delete worlds (highest index first) while f stays false at the root."""
    changed = True
    while changed:
        changed = False
        for w in reversed(range(model.worlds)):
            if w == model.root:
                continue
            smaller = model.restrict([v for v in range(model.worlds) if v != w])
            if not model_check(smaller, smaller.root, f):
                model = smaller
                changed = True
                break
    return model


# ------------------------------------------------------------------ public


def decide(f: ModalFormula, mode: str = "gl", budget: int = DEFAULT_BUDGET, minimal: bool = True) -> Verdict:
    """Theorem with a derivation, or NonTheorem with a falsifying finite model."""
    search = _Search(mode, budget)
    result, _ = _deep(search.prove, frozenset(), frozenset((f,)))
    if isinstance(result, Derivation):
        return Theorem(f, result, search.nodes, mode)
    model = _to_model(result)
    if model_check(model, model.root, f):
        raise AssertionError("extracted countermodel does not refute the formula")
    if minimal:
        model = minimize(model, f)
    return NonTheorem(f, model, search.nodes, mode)


def boxplus(axioms: list[ModalFormula]) -> ModalFormula:
    return And(*(And(a, Box(a)) for a in axioms))


def global_consequence(
    axioms: list[ModalFormula], goal: ModalFormula, mode: str = "gl", budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Does goal hold at every world of every model whose worlds all satisfy the axioms?"""
    if not axioms:
        return decide(goal, mode, budget)
    return decide(Implies(boxplus(axioms), goal), mode, budget)


# ------------------------------------------------------------------ checker


class DerivationError(ValueError):
    pass


def check_derivation(d: Derivation, mode: str = "gl") -> bool:
    """Replay every rule instance; raises :class:`DerivationError` on the first bad step."""
    seen: set[int] = set()
    for node in d.nodes():
        if id(node) in seen:
            continue
        seen.add(id(node))
        _check_step(node, mode)
    return True


def _check_step(d: Derivation, mode: str) -> None:
    L, R = d.sequent.left, d.sequent.right
    p = d.principal
    prem = [x.sequent for x in d.premises]

    def bad(msg):
        raise DerivationError(f"{d.rule} at [{d.sequent}]: {msg}")

    if d.rule == "axiom":
        if not (p in L and p in R) or prem:
            bad("principal not on both sides")
    elif d.rule == "bottom":
        if Bottom not in L or prem:
            bad("ff not on the left")
    elif d.rule == "imp_right":
        if not isinstance(p, Implies) or p not in R or len(prem) != 1:
            bad("no implication on the right")
        if prem[0] != Sequent(L | {p.left}, (R - {p}) | {p.right}):
            bad("premise does not match")
    elif d.rule == "imp_left":
        if not isinstance(p, Implies) or p not in L or len(prem) != 2:
            bad("no implication on the left")
        rest = L - {p}
        if prem[0] != Sequent(rest, R | {p.left}) or prem[1] != Sequent(rest | {p.right}, R):
            bad("premises do not match")
    elif d.rule == "weaken":
        if len(prem) != 1 or not (prem[0].left <= L and prem[0].right <= R):
            bad("premise is not a subsequent")
    elif d.rule in ("gl_box", "k4_box"):
        if (d.rule == "gl_box") != (mode == "gl"):
            bad(f"rule not available in mode {mode}")
        if not isinstance(p, Box) or p not in R or len(prem) != 1:
            bad("no box on the right")
        boxes = frozenset(f for f in L if isinstance(f, Box))
        context = boxes | frozenset(f.body for f in boxes)
        expect_left = context | {p} if d.rule == "gl_box" else context
        if prem[0] != Sequent(expect_left, frozenset((p.body,))):
            bad("premise does not match the box rule")
    else:
        bad("unknown rule")


def check_verdict(v: Verdict) -> bool:
    """Certificate check: derivation replays to the formula, or the model refutes it."""
    if isinstance(v, Theorem):
        root = v.derivation.sequent
        if root != Sequent(frozenset(), frozenset((v.formula,))):
            raise DerivationError("derivation does not conclude the formula")
        return check_derivation(v.derivation, v.mode)
    if v.mode == "gl" and not v.model.is_gl_frame():
        raise DerivationError("countermodel frame is not transitive and irreflexive")
    if v.mode == "k4" and not v.model.is_transitive():
        raise DerivationError("countermodel frame is not transitive")
    return not model_check(v.model, v.model.root, v.formula)
