"""Finite Kripke models, the model checker, and the small-frame refutation oracle."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .formula import Atom, Bottom, Implies, ModalFormula, atoms, subformulas


class UnknownWorld(KeyError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    """Worlds are ``0..worlds-1``; ``edges`` is the accessibility relation."""

    worlds: int
    edges: frozenset[tuple[int, int]]
    valuation: dict[str, frozenset[int]] = field(hash=False)
    root: int = 0

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((int(a), int(b)) for a, b in self.edges))
        object.__setattr__(
            self, "valuation", {k: frozenset(v) for k, v in sorted(self.valuation.items())}
        )
        for a, b in self.edges:
            if not (0 <= a < self.worlds and 0 <= b < self.worlds):
                raise UnknownWorld(f"edge ({a}, {b}) leaves the model")
        if not 0 <= self.root < self.worlds:
            raise UnknownWorld(f"root {self.root} not in model")

    def successors(self, w: int) -> list[int]:
        return sorted(b for a, b in self.edges if a == w)

    def is_transitive(self) -> bool:
        return all((a, d) in self.edges for a, b in self.edges for c, d in self.edges if b == c)

    def is_irreflexive(self) -> bool:
        return all(a != b for a, b in self.edges)

    def is_gl_frame(self) -> bool:
        return self.is_transitive() and self.is_irreflexive()

    def true_atoms(self, w: int) -> list[str]:
        return [p for p, ws in self.valuation.items() if w in ws]

    def to_dict(self) -> dict:
        return {
            "worlds": self.worlds,
            "edges": sorted([a, b] for a, b in self.edges),
            "valuation": {p: sorted(ws) for p, ws in self.valuation.items()},
            "root": self.root,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> KripkeModel:
        return cls(
            worlds=int(d["worlds"]),
            edges=frozenset(tuple(e) for e in d["edges"]),
            valuation={p: frozenset(ws) for p, ws in d["valuation"].items()},
            root=int(d.get("root", 0)),
        )

    def restrict(self, keep: list[int]) -> KripkeModel:
        """Induced submodel on ``keep`` (must contain the root), renumbered in order."""
        index = {w: i for i, w in enumerate(sorted(keep))}
        return KripkeModel(
            worlds=len(index),
            edges=frozenset((index[a], index[b]) for a, b in self.edges if a in index and b in index),
            valuation={p: frozenset(index[w] for w in ws if w in index) for p, ws in self.valuation.items()},
            root=index[self.root],
        )


def transitive_closure(n: int, edges) -> frozenset[tuple[int, int]]:
    succ = [set() for _ in range(n)]
    for a, b in edges:
        succ[a].add(b)
    for k in range(n):
        for i in range(n):
            if k in succ[i]:
                succ[i] |= succ[k]
    return frozenset((i, j) for i in range(n) for j in succ[i])


def model_check(m: KripkeModel, w: int, f: ModalFormula) -> bool:
    if not 0 <= w < m.worlds:
        raise UnknownWorld(f"world {w} not in model with {m.worlds} worlds")
    return w in truth_set(m, f)


def truth_set(m: KripkeModel, f: ModalFormula) -> frozenset[int]:
    """Worlds of ``m`` where ``f`` holds."""
    succ = [set() for _ in range(m.worlds)]
    for a, b in m.edges:
        succ[a].add(b)
    everything = frozenset(range(m.worlds))
    memo: dict[ModalFormula, frozenset[int]] = {}
    # children before parents
    order = sorted(subformulas(f), key=lambda g: g.size)
    for g in order:
        if g is Bottom:
            val = frozenset()
        elif isinstance(g, Atom):
            val = m.valuation.get(g.name, frozenset())
        elif isinstance(g, Implies):
            val = (everything - memo[g.left]) | memo[g.right]
        else:
            body = memo[g.body]
            val = frozenset(w for w in range(m.worlds) if succ[w] <= body)
        memo[g] = val
    return memo[f]


# ------------------------------------------------------------------- oracle


@lru_cache(maxsize=None)
def strict_orders(n: int) -> np.ndarray:
    """All transitive irreflexive relations on n labeled worlds, shape (count, n, n)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in range(1 << len(pairs)):
        rel = np.zeros((n, n), dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                rel[i, j] = True
        composed = (rel[:, :, None] & rel[None, :, :]).any(axis=1)
        if np.all(~composed | rel):
            # antisymmetry follows from transitivity plus irreflexivity
            out.append(rel)
    return np.array(out, dtype=bool).reshape(len(out), n, n)


@lru_cache(maxsize=None)
def _valuation_bits(n_worlds: int, n_atoms: int) -> np.ndarray:
    """Shape (2**(n_worlds*n_atoms), n_atoms, n_worlds) of all valuations."""
    total = n_worlds * n_atoms
    codes = np.arange(1 << total, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(total)) & 1
    return bits.astype(bool).reshape(1 << total, n_atoms, n_worlds)


def _falsified(f: ModalFormula, frames: np.ndarray, vals: np.ndarray, names: list[str]) -> np.ndarray:
    """Boolean array (frames, valuations, worlds) of worlds where f fails."""
    nf, n, _ = frames.shape
    nv = vals.shape[0]
    memo: dict[ModalFormula, np.ndarray] = {}
    for g in sorted(subformulas(f), key=lambda g: g.size):
        if g is Bottom:
            val = np.zeros((1, 1, n), dtype=bool)
        elif isinstance(g, Atom):
            val = vals[None, :, names.index(g.name), :]
        elif isinstance(g, Implies):
            val = ~memo[g.left] | memo[g.right]
        else:
            body = np.broadcast_to(memo[g.body], (nf, nv, n))
            # world w fails []body iff some successor v has body false
            bad = np.einsum("fwv,fxv->fxw", frames.astype(np.uint8), (~body).astype(np.uint8)) > 0
            val = ~bad
        memo[g] = val
    return ~np.broadcast_to(memo[f], (nf, nv, n))


def enumerate_refutation(f: ModalFormula, max_worlds: int) -> KripkeModel | None:
    """First model (by size, frame order, valuation order, world) falsifying f, or None.

    Exhaustive over all transitive irreflexive frames with 1..max_worlds
    labeled worlds and all valuations of the atoms of f.
    """
    names = atoms(f)
    for n in range(1, max_worlds + 1):
        frames = strict_orders(n)
        vals = _valuation_bits(n, len(names))
        fails = _falsified(f, frames, vals, names)
        hits = np.argwhere(fails)
        if len(hits):
            fi, vi, w = (int(x) for x in hits[0])
            rel = frames[fi]
            return KripkeModel(
                worlds=n,
                edges=frozenset((i, j) for i in range(n) for j in range(n) if rel[i, j]),
                valuation={p: frozenset(np.flatnonzero(vals[vi, k]).tolist()) for k, p in enumerate(names)},
                root=w,
            )
    return None


def refutable_within(f: ModalFormula, max_worlds: int) -> bool:
    return enumerate_refutation(f, max_worlds) is not None


def all_models(n: int, names: list[str]):
    """Iterate every GL model on n worlds over the given atoms (for small tests)."""
    frames = strict_orders(n)
    for rel in frames:
        edges = frozenset((i, j) for i in range(n) for j in range(n) if rel[i, j])
        for combo in itertools.product(range(1 << n), repeat=len(names)):
            yield KripkeModel(
                n, edges, {p: frozenset(w for w in range(n) if c >> w & 1) for p, c in zip(names, combo)}
            )
