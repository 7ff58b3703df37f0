"""Provability logic GL: formulas, Kripke semantics, decision procedure."""

from .formula import (
    And, Atom, Bottom, Box, Diamond, Iff, Implies, ModalFormula, ModalParseError, Not, Or, Top,
    atoms, parse_modal, to_text,
)
from .kripke import KripkeModel, UnknownWorld, enumerate_refutation, model_check
from .prover import (
    DEFAULT_BUDGET, Derivation, DerivationError, NonTheorem, ResourceLimit, Theorem, Verdict,
    boxplus, check_derivation, check_verdict, decide, global_consequence,
)

__all__ = [
    "And", "Atom", "Bottom", "Box", "Diamond", "Iff", "Implies", "ModalFormula", "ModalParseError",
    "Not", "Or", "Top", "atoms", "parse_modal", "to_text", "KripkeModel", "UnknownWorld",
    "enumerate_refutation", "model_check", "DEFAULT_BUDGET", "Derivation", "DerivationError",
    "NonTheorem", "ResourceLimit", "Theorem", "Verdict", "boxplus", "check_derivation",
    "check_verdict", "decide", "global_consequence",
]
