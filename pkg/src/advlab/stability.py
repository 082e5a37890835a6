"""Stability regions in terms of the local difference ratio.

Writing a linear three-point scheme in incremental form exposes a
per-point coefficient D that is affine in one difference ratio.  The
update is free of new extrema exactly when D lies in [0, 1]; solving
that double inequality for the ratio yields the scheme's admissible
region.  Upwind-flux schemes constrain the ratio at the neighboring
point and the region is a finite interval; centred-flux schemes
constrain the ratio at the update point itself and the region is the
complement of an open interval.  Only the two-point upwind choice
(trailing coefficient zero) admits every ratio, i.e. is uniformly
non-oscillatory.

Also here: the classical Fourier amplification factor of the linear
schemes, used as an independent check on the stepping code.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .grid import State
from .schemes import Family, SchemeSpec, eno2_coefficients
from .smoothness import Direction, theta_arrays


class IntervalShape(enum.Enum):
    ALL_REALS = "all-reals"
    INTERVAL = "interval"
    COMPLEMENT = "complement-of-open-interval"
    EMPTY = "empty"


@dataclass(frozen=True)
class DdsInterval:
    """Admissible set of ratio values, with closed finite endpoints.

    ``direction``/``offset`` identify which ratio is constrained: the
    ratio of the given direction evaluated at update point + offset.
    For INTERVAL the set is [lo, hi]; for COMPLEMENT it is everything
    outside the open interval (lo, hi).
    """

    shape: IntervalShape
    lo: float
    hi: float
    direction: Direction
    offset: int

    def contains(self, x: float) -> bool:
        if self.shape is IntervalShape.ALL_REALS:
            return True
        if self.shape is IntervalShape.EMPTY:
            return False
        if self.shape is IntervalShape.INTERVAL:
            return self.lo <= x <= self.hi
        return x <= self.lo or x >= self.hi

    def contains_infinite(self, positive: bool) -> bool:
        """Membership of +inf/-inf, decided by unboundedness on that side."""
        if self.shape is IntervalShape.ALL_REALS:
            return True
        if self.shape is IntervalShape.EMPTY:
            return False
        if self.shape is IntervalShape.COMPLEMENT:
            return True
        return self.hi == math.inf if positive else self.lo == -math.inf

    @property
    def finite_endpoints(self) -> tuple[float, ...]:
        if self.shape in (IntervalShape.ALL_REALS, IntervalShape.EMPTY):
            return ()
        return tuple(e for e in (self.lo, self.hi) if math.isfinite(e))

    def describe(self) -> str:
        theta = f"theta_{'plus' if self.direction is Direction.PLUS else 'minus'}"
        at = {0: "i", 1: "i+1", -1: "i-1"}.get(self.offset, f"i{self.offset:+d}")
        if self.shape is IntervalShape.ALL_REALS:
            region = "all reals (UNO)"
        elif self.shape is IntervalShape.EMPTY:
            region = "empty"
        elif self.shape is IntervalShape.INTERVAL:
            region = f"[{self.lo:.12g}, {self.hi:.12g}]"
        else:
            region = f"(-inf, {self.lo:.12g}] U [{self.hi:.12g}, inf)"
        return f"{theta}[{at}] in {region}"


def _affine_box(scale: float, shift: float, lo: float, hi: float) -> tuple[float, float]:
    """Solve lo <= scale*x + shift <= hi for x (scale nonzero)."""
    a = (lo - shift) / scale
    b = (hi - shift) / scale
    return (a, b) if a <= b else (b, a)


def _const_region(d: float, direction: Direction, offset: int) -> DdsInterval:
    shape = IntervalShape.ALL_REALS if 0.0 <= d <= 1.0 else IntervalShape.EMPTY
    return DdsInterval(shape, -math.inf, math.inf, direction, offset)


def _invert_interval(l: float, u: float, direction: Direction, offset: int) -> DdsInterval:
    """Image of [l, u] under x -> 1/x, as a region for the reciprocal ratio."""
    if l < 0.0 < u:
        return DdsInterval(IntervalShape.COMPLEMENT, 1.0 / l, 1.0 / u, direction, offset)
    if l == 0.0 and u == 0.0:
        return DdsInterval(IntervalShape.EMPTY, math.nan, math.nan, direction, offset)
    if l == 0.0:
        return DdsInterval(IntervalShape.INTERVAL, 1.0 / u, math.inf, direction, offset)
    if u == 0.0:
        return DdsInterval(IntervalShape.INTERVAL, -math.inf, 1.0 / l, direction, offset)
    return DdsInterval(IntervalShape.INTERVAL, 1.0 / u, 1.0 / l, direction, offset)


def dds_interval(spec: SchemeSpec) -> DdsInterval:
    """Region of ratio values for which the scheme's D stays in [0, 1]."""
    if spec.family is Family.HYBRID_ENO2:
        raise ValueError("the hybrid scheme has no affine coefficient; no interval form")
    lam, alpha, beta = spec.lam, spec.alpha, spec.beta
    if spec.family is Family.UPWIND_FLUX:
        if spec.a > 0.0:
            # D = lam*(alpha + beta*theta_plus[i-1])
            if beta == 0.0:
                return _const_region(lam * alpha, Direction.PLUS, -1)
            l, u = _affine_box(lam * beta, lam * alpha, 0.0, 1.0)
            return DdsInterval(IntervalShape.INTERVAL, l, u, Direction.PLUS, -1)
        # D = -lam*(alpha + beta*theta_minus[i+1])
        if beta == 0.0:
            return _const_region(-lam * alpha, Direction.MINUS, 1)
        l, u = _affine_box(-lam * beta, -lam * alpha, 0.0, 1.0)
        return DdsInterval(IntervalShape.INTERVAL, l, u, Direction.MINUS, 1)
    if spec.a > 0.0:
        # D = lam*(alpha*theta_minus[i] + beta); reported for theta_plus[i]
        if alpha == 0.0:
            return _const_region(lam * beta, Direction.PLUS, 0)
        l, u = _affine_box(lam * alpha, lam * beta, 0.0, 1.0)
        return _invert_interval(l, u, Direction.PLUS, 0)
    # D = -lam*(alpha + beta*theta_plus[i]); reported for theta_minus[i]
    if beta == 0.0:
        return _const_region(-lam * alpha, Direction.MINUS, 0)
    l, u = _affine_box(-lam * beta, -lam * alpha, 0.0, 1.0)
    return _invert_interval(l, u, Direction.MINUS, 0)


def d_from_theta(spec: SchemeSpec, theta: float) -> float:
    """Coefficient D as a function of the ratio the region is stated in.

    For centred schemes this goes through the reciprocal, so theta = 0
    maps to an infinite D (never inside [0, 1]).
    """
    if spec.family is Family.HYBRID_ENO2:
        raise ValueError("the hybrid coefficient is not a function of one ratio")
    lam, alpha, beta = spec.lam, spec.alpha, spec.beta
    if spec.family is Family.UPWIND_FLUX:
        return lam * (alpha + beta * theta) if spec.a > 0.0 else -lam * (alpha + beta * theta)
    if theta == 0.0:
        return math.copysign(math.inf, alpha if spec.a > 0.0 else -beta)
    if spec.a > 0.0:
        return lam * (alpha / theta + beta)
    return -lam * (alpha + beta / theta)


def is_uno(spec: SchemeSpec) -> bool:
    """True when D stays in [0, 1] independent of the data.

    Linear schemes: the region covers every ratio.  The hybrid scheme
    carries a proven guarantee exactly up to CFL one half.
    """
    if spec.family is Family.HYBRID_ENO2:
        return spec.cfl <= 0.5
    return dds_interval(spec).shape is IntervalShape.ALL_REALS


IN_DDS = 0
VIOLATION = 1
DEGENERATE = 2


@dataclass(frozen=True)
class StateClassification:
    """Per-update-point membership report for one state."""

    status: np.ndarray
    interval: DdsInterval | None

    @property
    def violations(self) -> int:
        return int((self.status == VIOLATION).sum())

    @property
    def degenerate(self) -> int:
        return int((self.status == DEGENERATE).sum())

    @property
    def in_dds(self) -> int:
        return int((self.status == IN_DDS).sum())

    @property
    def violation_indices(self) -> np.ndarray:
        return np.flatnonzero(self.status == VIOLATION)


def classify_state(spec: SchemeSpec, state: State) -> StateClassification:
    """Classify every update point as in-region / violating / degenerate.

    For linear schemes the constrained ratio is evaluated with explicit
    zero-denominator handling: 0/0 means locally flat data (degenerate,
    never a violation) and signed infinities are resolved against the
    unbounded sides of the region.  For the hybrid scheme membership is
    the direct test D in [0, 1].
    """
    u = state.values
    if spec.family is Family.HYBRID_ENO2:
        d = eno2_coefficients(u, spec.a, spec.lam)
        dividing = (u - np.roll(u, 1)) if spec.a > 0.0 else (np.roll(u, -1) - u)
        status = np.where((d >= 0.0) & (d <= 1.0), IN_DDS, VIOLATION)
        status = np.where(dividing == 0.0, DEGENERATE, status)
        return StateClassification(status=status, interval=None)
    region = dds_interval(spec)
    num, den = theta_arrays(u, region.direction)
    # ratio at update point i lives at index i + offset
    num = np.roll(num, -region.offset)
    den = np.roll(den, -region.offset)
    status = np.empty(u.size, dtype=int)
    finite = den != 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(finite, num / np.where(finite, den, 1.0), 0.0)
    if region.shape is IntervalShape.INTERVAL:
        member = (t >= region.lo) & (t <= region.hi)
    elif region.shape is IntervalShape.COMPLEMENT:
        member = (t <= region.lo) | (t >= region.hi)
    elif region.shape is IntervalShape.ALL_REALS:
        member = np.ones(u.size, dtype=bool)
    else:
        member = np.zeros(u.size, dtype=bool)
    status[finite] = np.where(member[finite], IN_DDS, VIOLATION)
    indeterminate = ~finite & (num == 0.0)
    status[indeterminate] = DEGENERATE
    pos_inf = ~finite & (num > 0.0)
    neg_inf = ~finite & (num < 0.0)
    status[pos_inf] = IN_DDS if region.contains_infinite(True) else VIOLATION
    status[neg_inf] = IN_DDS if region.contains_infinite(False) else VIOLATION
    return StateClassification(status=status, interval=region)


def local_max_principle_check(a: float, before: State, after: State) -> np.ndarray:
    """Indices where the updated value leaves the segment spanned by its
    two stencil neighbors (orientation-independent min/max form).

    Tolerance scales with the data: 1e-12 * max|before|.
    """
    u = before.values
    un = after.values
    if a > 0.0:
        other = np.roll(u, 1)
    else:
        other = np.roll(u, -1)
    lo = np.minimum(u, other)
    hi = np.maximum(u, other)
    tol = 1e-12 * float(np.abs(u).max(initial=0.0))
    bad = (un < lo - tol) | (un > hi + tol)
    return np.flatnonzero(bad)


@dataclass(frozen=True)
class AmplificationProfile:
    """Sampled magnitude of the per-mode growth factor on [0, pi]."""

    xi_samples: np.ndarray
    magnitudes: np.ndarray

    @property
    def max_magnitude(self) -> float:
        return float(self.magnitudes.max())


def amplification(spec: SchemeSpec, n_samples: int = 256) -> AmplificationProfile:
    """Fourier growth factor |g(xi)| of a linear scheme.

    Substituting a discrete mode e^{i*j*xi} into the stencil gives the
    one-step multiplier g(xi); |g| <= 1 for every xi is the classical
    stability criterion.
    """
    if spec.family is Family.HYBRID_ENO2:
        raise ValueError("amplification factor is defined for linear schemes only")
    if n_samples < 2:
        raise ValueError("need at least two samples")
    xi = np.linspace(0.0, np.pi, n_samples)
    e = np.exp(1j * xi)
    lam, alpha, beta = spec.lam, spec.alpha, spec.beta
    if spec.family is Family.UPWIND_FLUX:
        if spec.a > 0.0:
            g = 1.0 - lam * (alpha * (1.0 - 1.0 / e) + beta * (1.0 / e - 1.0 / e**2))
        else:
            g = 1.0 - lam * (alpha * (e - 1.0) + beta * (e**2 - e))
    else:
        g = 1.0 - lam * (alpha * (e - 1.0) + beta * (1.0 - 1.0 / e))
    return AmplificationProfile(xi_samples=xi, magnitudes=np.abs(g))
