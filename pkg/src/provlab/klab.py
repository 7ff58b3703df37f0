"""A tiny total machine, exact Kolmogorov complexity on it, and the m(L) census.

Programs are bit strings read as 2-bit opcodes acting on an accumulator
that starts at 0::

    00 INC   acc + 1
    01 DBL   acc * 2
    10 SQR   acc * acc
    11 HALT  stop now

There are no jumps, so every program halts and K is exactly computable.
Odd-length bit strings are not programs and output nothing.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

DEFAULT_CEILING = 16
OPCODES = ("00", "01", "10", "11")


class CeilingExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Program:
    bits: str

    def __post_init__(self):
        if any(c not in "01" for c in self.bits):
            raise ValueError(f"program bits must be 0/1, got {self.bits!r}")

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def valid(self) -> bool:
        return len(self.bits) % 2 == 0

    def __str__(self) -> str:
        return self.bits


def run(p: Program | str) -> int | None:
    bits = p.bits if isinstance(p, Program) else p
    if len(bits) % 2:
        return None
    acc = 0
    for k in range(0, len(bits), 2):
        op = bits[k : k + 2]
        if op == "00":
            acc += 1
        elif op == "01":
            acc *= 2
        elif op == "10":
            acc *= acc
        else:
            break
    return acc


def programs(max_len: int):
    """Valid programs of length <= max_len in length-then-lexicographic order."""
    for n_ops in range(max_len // 2 + 1):
        for ops in itertools.product(OPCODES, repeat=n_ops):
            yield Program("".join(ops))


def program_count(L: int) -> int:
    return sum(4**k for k in range(L // 2 + 1))


def witness(x: int, L: int) -> Program | None:
    """First program (length-lex) of length <= L that outputs x."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    for p in programs(L):
        if run(p) == x:
            return p
    return None


def kolmogorov(x: int, max_len: int) -> int | None:
    p = witness(x, max_len)
    return None if p is None else len(p)


def _shortest_outputs(L: int) -> dict[int, Program]:
    """Output -> its first program in length-lex order (hence a shortest one)."""
    best: dict[int, Program] = {}
    for p in programs(L):
        y = run(p)
        if y not in best:
            best[y] = p
    return best


@dataclass
class CensusReport:
    L: int
    range_max: int
    k_values: dict[int, int | None]
    m: int
    program_count: int
    witnesses: dict[int, str] = field(default_factory=dict, repr=False)

    def check(self) -> None:
        if not 1 <= self.m <= self.range_max + 1:
            raise AssertionError(f"m = {self.m} outside [1, {self.range_max + 1}]")
        if not self.program_count < self.range_max:
            raise AssertionError("more programs than 2^(L+1)")

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "range_max": self.range_max,
            "m": self.m,
            "program_count": self.program_count,
            "k_values": [[x, k] for x, k in sorted(self.k_values.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def table(self) -> str:
        lines = [f"{'x':>8}  {'K(x)':>5}  witness"]
        for x, k in sorted(self.k_values.items()):
            if k is None:
                lines.append(f"{x:>8}  {'>' + str(self.L):>5}  -")
            else:
                lines.append(f"{x:>8}  {k:>5}  {self.witnesses[x] or '(empty)'}")
        lines.append(f"L = {self.L}: m = {self.m} of {self.range_max + 1}, programs = {self.program_count}")
        return "\n".join(lines)


def census(L: int, ceiling: int = DEFAULT_CEILING) -> CensusReport:
    if L < 0:
        raise ValueError("L must be nonnegative")
    if L > ceiling:
        raise CeilingExceeded(f"L = {L} exceeds the census ceiling {ceiling}")
    top = 2 ** (L + 1)
    best = _shortest_outputs(L)
    k_values = {x: (len(best[x]) if x in best else None) for x in range(top + 1)}
    report = CensusReport(
        L=L,
        range_max=top,
        k_values=k_values,
        m=sum(1 for k in k_values.values() if k is None),
        program_count=program_count(L),
        witnesses={x: best[x].bits for x in range(top + 1) if x in best},
    )
    report.check()
    return report


def sweep(max_L: int, ceiling: int = DEFAULT_CEILING) -> list[CensusReport]:
    return [census(L, ceiling) for L in range(max_L + 1)]
