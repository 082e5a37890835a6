"""Figure rendering for run artifacts (written next to the CSVs)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def solution_figure(path: Path, result) -> Path:
    """Final numeric profile against the exact characteristic solution."""
    final = next(st for st in reversed(result.history) if st.finite)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(result.grid.points, result.exact_final.values, "k-", lw=1.2, label="exact")
    ax.plot(result.grid.points, final.values, "o-", ms=2.5, lw=0.8, label=result.spec.name)
    ax.set_xlabel("x")
    ax.set_ylabel("u")
    ax.set_title(
        f"{result.spec.name}, {result.config.ic}, CFL={result.spec.cfl:g}, "
        f"t={final.time:g}, N={result.grid.n_cells} [{result.report.verdict.value}]"
    )
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def history_figure(path: Path, report) -> Path:
    """Total variation and extrema count over time."""
    times = [s.time for s in report.steps]
    tvs = [s.total_variation for s in report.steps]
    counts = [s.extrema_count for s in report.steps]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(times, tvs, "-", color="tab:blue", label="total variation")
    ax.set_xlabel("t")
    ax.set_ylabel("total variation", color="tab:blue")
    ax2 = ax.twinx()
    ax2.plot(times, counts, "-", color="tab:red", alpha=0.7, label="extrema")
    ax2.set_ylabel("extrema count", color="tab:red")
    ax.set_title(f"diagnostics [{report.verdict.value}]")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def convergence_figure(path: Path, rows) -> Path:
    """log-log refinement plot with first/second order guide lines."""
    ns = [r.n_cells for r in rows]
    errs = [r.l1_error for r in rows]
    fig, ax = plt.subplots(figsize=(5.4, 4.0))
    ax.loglog(ns, errs, "o-", label="L1 error")
    ref = errs[0]
    ax.loglog(ns, [ref * ns[0] / n for n in ns], "k--", lw=0.8, label="order 1")
    ax.loglog(ns, [ref * (ns[0] / n) ** 2 for n in ns], "k:", lw=0.8, label="order 2")
    ax.set_xlabel("N")
    ax.set_ylabel("L1 error")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)
