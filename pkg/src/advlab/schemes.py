"""Three-point scheme catalog and time stepping.

Every linear scheme is stored in a normalized flux convention where the
two flux coefficients sum to the advection speed, F(u, u) = a*u:

  upwind   a > 0:  F_{i+1/2} = alpha*u_i     + beta*u_{i-1}
  upwind   a < 0:  F_{i+1/2} = alpha*u_{i+1} + beta*u_{i+2}
  centred  any a:  F_{i+1/2} = alpha*u_{i+1} + beta*u_i

Classical catalog entries whose textbook form carries the trailing
coefficient with a minus sign (second-order upwind, Beam-Warming) are
stored here with that sign folded into ``beta``.

Besides the conservative flux update, each scheme can be stepped in
incremental form u^{n+1} = u - D*(backward difference) for a > 0 (mirror
for a < 0), where the per-point coefficient D is an affine function of
the local difference ratio.  D in [0, 1] is exactly the local convexity
condition the stability analysis is built on.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .grid import State
from .smoothness import (
    Direction,
    ThetaValue,
    backward_diff,
    backward_diffs,
    forward_diff,
    forward_diffs,
)


class Family(enum.Enum):
    UPWIND_FLUX = "upwind"
    CENTRED_FLUX = "centred"
    HYBRID_ENO2 = "hybrid-eno2"


class Branch(enum.Enum):
    """Which formula produced an incremental coefficient."""

    UPWIND = "upwind"
    CENTRED = "centred"
    DEGENERATE = "degenerate"
    ENO2_CASE1 = "eno2-upwind/upwind"
    ENO2_CASE2 = "eno2-upwind/central"
    ENO2_CASE3 = "eno2-central/upwind"
    ENO2_CASE4 = "eno2-central/central"


CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class SchemeSpec:
    """A scheme bound to a speed ``a`` and mesh ratio ``lam`` (= k/h)."""

    name: str
    family: Family
    alpha: float | None
    beta: float | None
    a: float
    lam: float
    cfl_range: tuple[float, float]

    def __post_init__(self) -> None:
        if self.a == 0.0:
            raise ValueError("advection speed must be nonzero")
        if not self.lam > 0.0:
            raise ValueError("lam must be positive")
        if self.family is not Family.HYBRID_ENO2:
            if self.alpha is None or self.beta is None:
                raise ValueError("linear schemes need both flux coefficients")
            if abs(self.alpha + self.beta - self.a) > CONSISTENCY_TOL * max(1.0, abs(self.a)):
                raise ValueError("inconsistent flux coefficients: alpha + beta must equal a")

    @property
    def cfl(self) -> float:
        return abs(self.a) * self.lam

    @property
    def is_linear(self) -> bool:
        return self.family is not Family.HYBRID_ENO2


CATALOG_NAMES = (
    "two-point-upwind",
    "three-point-upwind-2nd",
    "beam-warming",
    "lax-friedrichs",
    "ftcs",
    "lax-wendroff",
    "eno2",
)


def catalog(name: str, a: float, lam: float) -> SchemeSpec:
    """Look up a catalog scheme, binding it to speed ``a`` and ratio ``lam``.

    Running outside the scheme's admissible CFL range is allowed (it is a
    legitimate instability experiment) but emits a warning.
    """
    if a == 0.0:
        raise ValueError("advection speed must be nonzero")
    nu = abs(a) * lam
    if name == "two-point-upwind":
        spec = SchemeSpec(name, Family.UPWIND_FLUX, a, 0.0, a, lam, (0.0, 1.0))
    elif name == "three-point-upwind-2nd":
        spec = SchemeSpec(name, Family.UPWIND_FLUX, 1.5 * a, -0.5 * a, a, lam, (0.0, 0.5))
    elif name == "beam-warming":
        # beta changes sign at nu = 1; at nu = 1 the scheme degenerates to
        # the exact-shift two-point update.
        spec = SchemeSpec(
            name, Family.UPWIND_FLUX, 0.5 * a * (3.0 - nu), 0.5 * a * (nu - 1.0), a, lam, (0.0, 2.0)
        )
    elif name == "lax-friedrichs":
        spec = SchemeSpec(
            name,
            Family.CENTRED_FLUX,
            (a * lam - 1.0) / (2.0 * lam),
            (a * lam + 1.0) / (2.0 * lam),
            a,
            lam,
            (0.0, 1.0),
        )
    elif name == "ftcs":
        spec = SchemeSpec(name, Family.CENTRED_FLUX, 0.5 * a, 0.5 * a, a, lam, (0.0, 1.0))
    elif name == "lax-wendroff":
        spec = SchemeSpec(
            name,
            Family.CENTRED_FLUX,
            0.5 * a * (1.0 - a * lam),
            0.5 * a * (1.0 + a * lam),
            a,
            lam,
            (0.0, 1.0),
        )
    elif name == "eno2":
        spec = SchemeSpec(name, Family.HYBRID_ENO2, None, None, a, lam, (0.0, 0.5))
    else:
        raise ValueError(f"unknown scheme {name!r}; choices: {CATALOG_NAMES}")
    lo, hi = spec.cfl_range
    if not lo < spec.cfl <= hi:
        warnings.warn(
            f"{name}: CFL {spec.cfl:.6g} outside admissible range ({lo:g}, {hi:g}]",
            UserWarning,
            stacklevel=2,
        )
    return spec


def custom_upwind(alpha: float, beta: float, a: float, lam: float, name: str = "custom-upwind") -> SchemeSpec:
    return SchemeSpec(name, Family.UPWIND_FLUX, alpha, beta, a, lam, (0.0, np.inf))


def custom_centred(alpha: float, beta: float, a: float, lam: float, name: str = "custom-centred") -> SchemeSpec:
    return SchemeSpec(name, Family.CENTRED_FLUX, alpha, beta, a, lam, (0.0, np.inf))


def _flux_array(spec: SchemeSpec, u: np.ndarray) -> np.ndarray:
    """F[i] = numerical flux through interface i+1/2."""
    if spec.family is Family.UPWIND_FLUX:
        if spec.a > 0.0:
            return spec.alpha * u + spec.beta * np.roll(u, 1)
        return spec.alpha * np.roll(u, -1) + spec.beta * np.roll(u, -2)
    if spec.family is Family.CENTRED_FLUX:
        return spec.alpha * np.roll(u, -1) + spec.beta * u
    raise ValueError("the hybrid scheme has no single flux formula; use step_eno2")


def numerical_flux(spec: SchemeSpec, state: State, i: int) -> float:
    """Flux through interface i+1/2 for a linear scheme."""
    n = state.grid.n_cells
    return float(_flux_array(spec, state.values)[i % n])


def _advance(state: State, unew: np.ndarray, lam: float) -> State:
    k = lam * state.grid.h
    return State(
        grid=state.grid, values=unew, time=state.time + k, step_index=state.step_index + 1
    )


def step_flux_form(spec: SchemeSpec, state: State) -> State:
    """One conservative step u_i - lam*(F_{i+1/2} - F_{i-1/2})."""
    u = state.values
    with np.errstate(over="ignore", invalid="ignore"):
        F = _flux_array(spec, u)
        unew = u - spec.lam * (F - np.roll(F, 1))
    return _advance(state, unew, spec.lam)


def _incremental_arrays(spec: SchemeSpec, u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(D, multiplier_diff, degenerate_mask) for the incremental update.

    The update is u - D*multiplier_diff for a > 0 and u + D*multiplier_diff
    for a < 0.  Where the dividing difference vanishes D is reported as the
    CFL number; the update term is zero there either way.
    """
    lam, alpha, beta = spec.lam, spec.alpha, spec.beta
    if spec.a > 0.0:
        dm = backward_diffs(u)
        degenerate = dm == 0.0
        safe = np.where(degenerate, 1.0, dm)
        if spec.family is Family.UPWIND_FLUX:
            ratio = np.roll(dm, 1) / safe
            d = lam * (alpha + beta * ratio)
        else:
            ratio = forward_diffs(u) / safe
            d = lam * (alpha * ratio + beta)
        d = np.where(degenerate, spec.cfl, d)
        return d, dm, degenerate
    dp = forward_diffs(u)
    degenerate = dp == 0.0
    safe = np.where(degenerate, 1.0, dp)
    if spec.family is Family.UPWIND_FLUX:
        ratio = np.roll(dp, -1) / safe
    else:
        ratio = backward_diffs(u) / safe
    d = -lam * (alpha + beta * ratio)
    d = np.where(degenerate, spec.cfl, d)
    return d, dp, degenerate


def step_incremental(spec: SchemeSpec, state: State) -> State:
    """One step in incremental form; equals the flux form wherever the
    dividing difference is nonzero."""
    if spec.family is Family.HYBRID_ENO2:
        raise ValueError("use step_eno2 for the hybrid scheme")
    u = state.values
    with np.errstate(over="ignore", invalid="ignore"):
        d, diff, _ = _incremental_arrays(spec, u)
        unew = u - d * diff if spec.a > 0.0 else u + d * diff
    return _advance(state, unew, spec.lam)


@dataclass(frozen=True)
class IncrementalCoefficient:
    """Per-point update coefficient D with the ratio that produced it."""

    value: float
    theta_used: ThetaValue
    branch: Branch


def incremental_coefficient(spec: SchemeSpec, state: State, i: int) -> IncrementalCoefficient:
    """Coefficient D of the incremental update at point i."""
    if spec.family is Family.HYBRID_ENO2:
        raise ValueError("use eno2_coefficient for the hybrid scheme")
    n = state.grid.n_cells
    i = i % n
    lam, alpha, beta = spec.lam, spec.alpha, spec.beta
    if spec.a > 0.0:
        dm = backward_diff(state, i)
        if spec.family is Family.UPWIND_FLUX:
            tv = ThetaValue(backward_diff(state, i - 1), dm, Direction.PLUS)
            branch = Branch.UPWIND
            formula = lambda r: lam * (alpha + beta * r)
        else:
            tv = ThetaValue(forward_diff(state, i), dm, Direction.MINUS)
            branch = Branch.CENTRED
            formula = lambda s: lam * (alpha * s + beta)
    else:
        dp = forward_diff(state, i)
        if spec.family is Family.UPWIND_FLUX:
            tv = ThetaValue(forward_diff(state, i + 1), dp, Direction.MINUS)
            branch = Branch.UPWIND
        else:
            tv = ThetaValue(backward_diff(state, i), dp, Direction.PLUS)
            branch = Branch.CENTRED
        formula = lambda r: -lam * (alpha + beta * r)
    if not tv.is_finite:
        return IncrementalCoefficient(value=spec.cfl, theta_used=tv, branch=Branch.DEGENERATE)
    return IncrementalCoefficient(value=formula(tv.value), theta_used=tv, branch=branch)


def _eno2_coefficients_pos(u: np.ndarray, nu: float) -> tuple[np.ndarray, np.ndarray]:
    """Four-case coefficient for rightward transport, vectorized on the
    last axis.  Returns (D, case index in 1..4).

    Stencil choice per interface: the leading interface takes the
    upwind-biased pair on a tie, the trailing one the central pair, so
    ties on locally linear data land on D = nu.  The case formulas never
    divide by zero: every branch that uses a ratio implies the divisor is
    strictly the larger difference.
    """
    dm = u - np.roll(u, 1, axis=-1)
    dmm = np.roll(dm, 1, axis=-1)
    dp = np.roll(u, -1, axis=-1) - u
    lead_upwind = np.abs(dm) <= np.abs(dp)
    trail_upwind = np.abs(dmm) < np.abs(dm)
    safe = np.where(dm == 0.0, 1.0, dm)
    r = dmm / safe
    s = dp / safe
    d = np.where(
        lead_upwind,
        np.where(trail_upwind, nu * (1.5 - 0.5 * r), nu),
        np.where(trail_upwind, nu * (0.5 * (s - r) + 1.0), nu * 0.5 * (s + 1.0)),
    )
    case = np.where(lead_upwind, np.where(trail_upwind, 1, 2), np.where(trail_upwind, 3, 4))
    return d, case


def eno2_coefficients(values: np.ndarray, a: float, lam: float) -> np.ndarray:
    """Per-point hybrid coefficients for a batch of states (last axis).

    Rightward transport follows the four-case selector; leftward transport
    is its mirror image (an extension of the analyzed case).
    """
    if a == 0.0:
        raise ValueError("advection speed must be nonzero")
    u = np.asarray(values, dtype=float)
    nu = abs(a) * lam
    if a > 0.0:
        return _eno2_coefficients_pos(u, nu)[0]
    return _eno2_coefficients_pos(u[..., ::-1], nu)[0][..., ::-1]


_ENO_CASES = {
    1: Branch.ENO2_CASE1,
    2: Branch.ENO2_CASE2,
    3: Branch.ENO2_CASE3,
    4: Branch.ENO2_CASE4,
}


def eno2_coefficient(state: State, i: int, a: float, lam: float) -> IncrementalCoefficient:
    """Hybrid coefficient at one point, with its case tag."""
    if a == 0.0:
        raise ValueError("advection speed must be nonzero")
    n = state.grid.n_cells
    i = i % n
    if a > 0.0:
        u = state.values
        idx = i
    else:
        u = state.values[::-1]
        idx = n - 1 - i
    d, case = _eno2_coefficients_pos(u, abs(a) * lam)
    c = int(case[idx])
    if a > 0.0:
        if c in (1, 2):
            tv = ThetaValue(backward_diff(state, i - 1), backward_diff(state, i), Direction.PLUS)
        else:
            tv = ThetaValue(forward_diff(state, i), backward_diff(state, i), Direction.MINUS)
    else:
        if c in (1, 2):
            tv = ThetaValue(forward_diff(state, i + 1), forward_diff(state, i), Direction.MINUS)
        else:
            tv = ThetaValue(backward_diff(state, i), forward_diff(state, i), Direction.PLUS)
    return IncrementalCoefficient(value=float(d[idx]), theta_used=tv, branch=_ENO_CASES[c])


def step_eno2(state: State, a: float, lam: float) -> State:
    """One hybrid step u - D*(backward diff) (mirrored for a < 0)."""
    u = state.values
    with np.errstate(over="ignore", invalid="ignore"):
        d = eno2_coefficients(u, a, lam)
        if a > 0.0:
            unew = u - d * backward_diffs(u)
        else:
            unew = u + d * forward_diffs(u)
    return _advance(state, unew, lam)


def step(spec: SchemeSpec, state: State) -> State:
    """Advance one step using the scheme's natural form."""
    if spec.family is Family.HYBRID_ENO2:
        return step_eno2(state, spec.a, spec.lam)
    return step_flux_form(spec, state)
