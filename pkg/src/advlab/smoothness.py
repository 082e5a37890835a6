"""Smoothness ratio of consecutive solution differences.

For transport to the right the ratio at point i is backward difference
over forward difference; for transport to the left it is the reciprocal.
Zero denominators are never divided through: the ratio is classified as
signed infinity (nonzero numerator) or indeterminate (0/0, flat data).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .grid import State


class Direction(enum.Enum):
    PLUS = "+"
    MINUS = "-"


class ThetaKind(enum.Enum):
    FINITE = "finite"
    PLUS_INF = "+inf"
    MINUS_INF = "-inf"
    INDETERMINATE = "indeterminate"


def sign_direction(a: float) -> Direction:
    """Ratio direction used for advection speed ``a`` (a must be nonzero)."""
    if a == 0.0:
        raise ValueError("advection speed must be nonzero")
    return Direction.PLUS if a > 0.0 else Direction.MINUS


@dataclass(frozen=True)
class ThetaValue:
    """One ratio with its raw numerator/denominator and degeneracy class."""

    numerator: float
    denominator: float
    direction: Direction

    @property
    def kind(self) -> ThetaKind:
        if self.denominator != 0.0:
            return ThetaKind.FINITE
        if self.numerator == 0.0:
            return ThetaKind.INDETERMINATE
        return ThetaKind.PLUS_INF if self.numerator > 0.0 else ThetaKind.MINUS_INF

    @property
    def value(self) -> float:
        """Extended-real value; NaN encodes the indeterminate 0/0 case."""
        k = self.kind
        if k is ThetaKind.FINITE:
            return self.numerator / self.denominator
        if k is ThetaKind.PLUS_INF:
            return math.inf
        if k is ThetaKind.MINUS_INF:
            return -math.inf
        return math.nan

    @property
    def is_finite(self) -> bool:
        return self.kind is ThetaKind.FINITE

    @property
    def is_indeterminate(self) -> bool:
        return self.kind is ThetaKind.INDETERMINATE


@dataclass(frozen=True)
class ThetaField:
    """Per-point ratios for a whole state, all in one direction."""

    entries: tuple
    direction: Direction

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> ThetaValue:
        return self.entries[i]

    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.entries])


def forward_diff(state: State, i: int) -> float:
    """u_{i+1} - u_i with periodic indexing."""
    v = state.values
    n = v.size
    return float(v[(i + 1) % n] - v[i % n])


def backward_diff(state: State, i: int) -> float:
    """u_i - u_{i-1} with periodic indexing."""
    v = state.values
    n = v.size
    return float(v[i % n] - v[(i - 1) % n])


def forward_diffs(values: np.ndarray) -> np.ndarray:
    """All forward differences along the last axis, periodic."""
    v = np.asarray(values, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.roll(v, -1, axis=-1) - v


def backward_diffs(values: np.ndarray) -> np.ndarray:
    """All backward differences along the last axis, periodic."""
    v = np.asarray(values, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        return v - np.roll(v, 1, axis=-1)


def theta(state: State, i: int, direction: Direction) -> ThetaValue:
    """Smoothness ratio at point i for the given transport direction."""
    dm = backward_diff(state, i)
    dp = forward_diff(state, i)
    if direction is Direction.PLUS:
        return ThetaValue(numerator=dm, denominator=dp, direction=direction)
    return ThetaValue(numerator=dp, denominator=dm, direction=direction)


def theta_field(state: State, direction: Direction) -> ThetaField:
    """Smoothness ratio at every grid point."""
    entries = tuple(theta(state, i, direction) for i in range(state.grid.n_cells))
    return ThetaField(entries=entries, direction=direction)


def theta_arrays(values: np.ndarray, direction: Direction) -> tuple[np.ndarray, np.ndarray]:
    """(numerator, denominator) arrays of the ratio at every point."""
    dm = backward_diffs(values)
    dp = forward_diffs(values)
    if direction is Direction.PLUS:
        return dm, dp
    return dp, dm
