"""Oscillation diagnostics: extrema census, total variation, error norms,
and the per-run verdict.

A run is judged oscillatory when strict local extrema appear beyond the
initial count, or when total variation grows past a small tolerance over
its initial value.  Both tests are immune to rounding noise: the census
requires a slope sign change stronger than eps^2 and exactly-equal
plateau values never count.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .grid import State
from .schemes import CATALOG_NAMES, Family, SchemeSpec, catalog
from .stability import classify_state, local_max_principle_check


def total_variation(state: State) -> float:
    """Sum of absolute consecutive differences with periodic wrap."""
    v = state.values
    with np.errstate(over="ignore", invalid="ignore"):
        return float(np.abs(np.roll(v, -1) - v).sum())


def extrema_census(state: State, eps: float) -> tuple[int, np.ndarray]:
    """Count strict interior sign changes of the slope.

    Point i is an extremum when (u_i - u_{i-1})*(u_{i+1} - u_i) < -eps^2,
    periodic.  Plateaus of exactly equal values never register.
    """
    if eps < 0.0:
        raise ValueError("eps must be nonnegative")
    v = state.values
    with np.errstate(over="ignore", invalid="ignore"):
        dm = v - np.roll(v, 1)
        dp = np.roll(v, -1) - v
        idx = np.flatnonzero(dm * dp < -eps * eps)
    return int(idx.size), idx


def error_norms(numeric: State, exact: State) -> tuple[float, float, float]:
    """(l1, l2, linf) of numeric - exact; l1/l2 are h-weighted."""
    if numeric.grid != exact.grid:
        raise ValueError("states live on different grids")
    d = numeric.values - exact.values
    h = numeric.grid.h
    return (
        float(h * np.abs(d).sum()),
        float(np.sqrt(h * (d * d).sum())),
        float(np.abs(d).max()),
    )


class Verdict(enum.Enum):
    CLEAN = "clean"
    OSCILLATORY = "oscillatory"
    DIVERGED = "diverged"


@dataclass(frozen=True)
class StepRecord:
    time: float
    extrema_count: int
    total_variation: float
    max_principle_violations: int
    dds_violations: int


@dataclass(frozen=True)
class RunReport:
    steps: tuple[StepRecord, ...]
    l1_error: float
    l2_error: float
    linf_error: float
    verdict: Verdict
    eps: float
    tv_tol: float
    first_violation_time: float | None

    @property
    def initial(self) -> StepRecord:
        return self.steps[0]

    @property
    def final(self) -> StepRecord:
        return self.steps[-1]

    @property
    def max_extrema(self) -> int:
        return max(r.extrema_count for r in self.steps)

    @property
    def max_total_variation(self) -> float:
        return max(r.total_variation for r in self.steps)

    @property
    def total_max_principle_violations(self) -> int:
        return sum(r.max_principle_violations for r in self.steps)

    @property
    def total_dds_violations(self) -> int:
        return sum(r.dds_violations for r in self.steps)


def spec_at_lambda(spec: SchemeSpec, lam: float) -> SchemeSpec:
    """Re-bind a scheme to another mesh ratio (used for a shortened step)."""
    if lam == spec.lam:
        return spec
    if spec.name in CATALOG_NAMES:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return catalog(spec.name, spec.a, lam)
    if spec.family is Family.HYBRID_ENO2:
        return SchemeSpec(spec.name, spec.family, None, None, spec.a, lam, spec.cfl_range)
    # custom linear coefficients are taken as lambda-independent
    return SchemeSpec(spec.name, spec.family, spec.alpha, spec.beta, spec.a, lam, spec.cfl_range)


def assess(
    history: list[State],
    exact_final: State | None,
    spec: SchemeSpec,
    eps: float | None = None,
    tv_tol: float | None = None,
    lam_history: list[float] | None = None,
) -> RunReport:
    """Build the run report from a stepping history.

    Defaults: eps = 1e-10 * max|u0| and tv_tol = 1e-6 * TV(u0).  The
    verdict is oscillatory when the census ever exceeds the initial one
    or TV ever grows past TV(u0) + tv_tol; any non-finite state makes
    the run diverged.  ``lam_history`` supplies the mesh ratio that
    produced each state (entry j for the step into history[j]), so a
    shortened last step is classified with its actual coefficients.
    """
    if not history:
        raise ValueError("history must be non-empty")
    u0 = history[0]
    if eps is None:
        eps = 1e-10 * float(np.abs(u0.values).max(initial=0.0))
    tv0 = total_variation(u0)
    if tv_tol is None:
        tv_tol = 1e-6 * tv0

    records: list[StepRecord] = []
    count0: int | None = None
    diverged = False
    first_violation: float | None = None
    for j, st in enumerate(history):
        if not st.finite:
            diverged = True
            records.append(StepRecord(st.time, 0, float("inf"), 0, 0))
            continue
        count, _ = extrema_census(st, eps)
        tv = total_variation(st)
        lam = lam_history[j] if lam_history is not None else spec.lam
        dds = classify_state(spec_at_lambda(spec, lam), st).violations
        if j > 0 and history[j - 1].finite:
            mp = int(local_max_principle_check(spec.a, history[j - 1], st).size)
        else:
            mp = 0
        records.append(StepRecord(st.time, count, tv, mp, dds))
        if count0 is None:
            count0 = count
        elif first_violation is None and (count > count0 or tv > tv0 + tv_tol):
            first_violation = st.time

    if diverged:
        verdict = Verdict.DIVERGED
    elif first_violation is not None:
        verdict = Verdict.OSCILLATORY
    else:
        verdict = Verdict.CLEAN

    if not diverged and exact_final is not None:
        l1, l2, linf = error_norms(history[-1], exact_final)
    else:
        l1 = l2 = linf = float("inf")
    return RunReport(
        steps=tuple(records),
        l1_error=l1,
        l2_error=l2,
        linf_error=linf,
        verdict=verdict,
        eps=eps,
        tv_tol=tv_tol,
        first_violation_time=first_violation,
    )
