"""Matplotlib figures for census reports, written straight to files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .klab import CensusReport  # noqa: E402


def plot_census(report: CensusReport, path: str | Path) -> Path:
    """K(x) for every x in [0, 2^(L+1)]; incompressible values drawn on the L+1 line."""
    path = Path(path)
    xs = sorted(report.k_values)
    known = [(x, k) for x, k in ((x, report.k_values[x]) for x in xs) if k is not None]
    missing = [x for x in xs if report.k_values[x] is None]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    if known:
        ax.scatter([x for x, _ in known], [k for _, k in known], s=14, label="K(x) <= L")
    if missing:
        ax.scatter(missing, [report.L + 1] * len(missing), s=8, marker="x", color="tab:red",
                   label=f"K(x) > L  (m = {report.m})")
    ax.axhline(report.L, color="grey", linestyle="--", linewidth=1)
    ax.set_xlabel("x")
    ax.set_ylabel("K(x) [bits]")
    ax.set_title(f"Census at L = {report.L}: {report.program_count} programs, "
                 f"{report.range_max + 1} integers")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_sweep(reports: list[CensusReport], path: str | Path) -> Path:
    """m(L) against the bounds 1 and 2^(L+1)+1, with the program count."""
    path = Path(path)
    Ls = [r.L for r in reports]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(Ls, [r.range_max + 1 for r in reports], "k--", linewidth=1, label="2^(L+1) + 1")
    ax.plot(Ls, [r.m for r in reports], "o-", label="m(L)")
    ax.plot(Ls, [r.program_count for r in reports], "s-", label="programs of length <= L")
    ax.axhline(1, color="grey", linewidth=1)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("L [bits]")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
