"""Uniform periodic 1D grid, solution states, and initial-data catalog.

The domain [x_lo, x_hi] is split into ``n_cells`` cells of width ``h``;
grid points are x_i = x_lo + i*h for i = 0..n_cells-1 and the right
endpoint is identified with the left one, so all index arithmetic is
modulo ``n_cells``.  The exact reference solution is the initial profile
translated at the constant advection speed with periodic wrap.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid with a fixed time step.

    ``h`` and ``lam`` (= k/h) are derived from the stored fields; the CFL
    number is ``abs(a) * lam``.
    """

    x_lo: float
    x_hi: float
    n_cells: int
    k: float
    a: float

    def __post_init__(self) -> None:
        if not self.x_hi > self.x_lo:
            raise ValueError("x_hi must exceed x_lo")
        if self.n_cells < 3:
            raise ValueError("need at least 3 cells for a three-point stencil")
        if self.a == 0.0:
            raise ValueError("advection speed must be nonzero")
        if not self.k > 0.0:
            raise ValueError("time step must be positive")

    @property
    def h(self) -> float:
        return (self.x_hi - self.x_lo) / self.n_cells

    @property
    def lam(self) -> float:
        return self.k / self.h

    @property
    def cfl(self) -> float:
        return abs(self.a) * self.lam

    @property
    def length(self) -> float:
        return self.x_hi - self.x_lo

    @property
    def points(self) -> np.ndarray:
        return self.x_lo + self.h * np.arange(self.n_cells)

    def wrap(self, x: np.ndarray) -> np.ndarray:
        """Map positions into [x_lo, x_hi) periodically."""
        return self.x_lo + np.mod(np.asarray(x, dtype=float) - self.x_lo, self.length)

    def index(self, i: int) -> int:
        return i % self.n_cells

    def with_time_step(self, k: float) -> "Grid1D":
        return dataclasses.replace(self, k=k)


def make_grid(x_lo: float, x_hi: float, n_cells: int, cfl: float, a: float) -> Grid1D:
    """Build a grid whose time step realizes the requested CFL number."""
    if not cfl > 0.0:
        raise ValueError("cfl must be positive")
    if a == 0.0:
        raise ValueError("advection speed must be nonzero")
    if n_cells < 3:
        raise ValueError("need at least 3 cells for a three-point stencil")
    h = (x_hi - x_lo) / n_cells
    if not h > 0.0:
        raise ValueError("x_hi must exceed x_lo")
    k = cfl * h / abs(a)
    return Grid1D(x_lo=x_lo, x_hi=x_hi, n_cells=n_cells, k=k, a=a)


@dataclass(frozen=True)
class State:
    """Point values on a grid at one time level.  Immutable."""

    grid: Grid1D
    values: np.ndarray
    time: float = 0.0
    step_index: int = 0

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size != self.grid.n_cells:
            raise ValueError("values length must equal n_cells")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def finite(self) -> bool:
        return bool(np.isfinite(self.values).all())

    def replace(self, **kw) -> "State":
        return dataclasses.replace(self, **kw)


class InitialData:
    """Base class for initial profiles; subclasses evaluate pointwise."""

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.evaluate(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class SinePi(InitialData):
    """sin(pi*x); one full period on a domain of length 2."""

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.sin(np.pi * x)


@dataclass(frozen=True)
class CompactBump(InitialData):
    """exp(-1/(1-x^2)) for |x| < 1, exactly 0 elsewhere (C-infinity)."""

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        inside = np.abs(x) < 1.0
        out[inside] = np.exp(-1.0 / (1.0 - x[inside] ** 2))
        return out


@dataclass(frozen=True)
class Step(InitialData):
    """Piecewise constant: ``left`` for x < x_jump, ``right`` otherwise."""

    x_jump: float = 0.0
    left: float = 0.0
    right: float = 1.0

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.where(x < self.x_jump, self.left, self.right)


@dataclass(frozen=True)
class Constant(InitialData):
    value: float = 1.0

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.full_like(x, self.value)


@dataclass(frozen=True)
class Linear(InitialData):
    slope: float = 1.0
    intercept: float = 0.0

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return self.intercept + self.slope * x


@dataclass(frozen=True)
class CustomTable(InitialData):
    """One value per grid point; only valid on a grid of matching size.

    Translation by non-multiples of h falls back to nearest-point lookup,
    which is exact whenever a*t is a multiple of h.
    """

    table: tuple

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        raise ValueError("CustomTable has no closed form; sample it on its own grid")


INITIAL_DATA = {
    "sine": SinePi,
    "bump": CompactBump,
    "step": Step,
    "constant": Constant,
    "linear": Linear,
}


def parse_initial(text: str) -> InitialData:
    """Parse an initial-data name such as ``sine`` or ``constant:0.5``."""
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name not in INITIAL_DATA:
        raise ValueError(f"unknown initial data {text!r}; choices: {sorted(INITIAL_DATA)}")
    cls = INITIAL_DATA[name]
    if not arg:
        return cls()
    params = [float(p) for p in arg.split(",")]
    return cls(*params)


def _eval_on_points(grid: Grid1D, data: InitialData, x: np.ndarray) -> np.ndarray:
    if isinstance(data, CustomTable):
        table = np.asarray(data.table, dtype=float)
        if table.size != grid.n_cells:
            raise ValueError("custom table length must equal n_cells")
        # nearest grid point after periodic wrap
        idx = np.rint((grid.wrap(x) - grid.x_lo) / grid.h).astype(int) % grid.n_cells
        return table[idx]
    return data(x)


def sample_initial(grid: Grid1D, data: InitialData) -> State:
    """Sample the initial profile at the grid points (time 0)."""
    return State(grid=grid, values=_eval_on_points(grid, data, grid.points), time=0.0)


def exact_solution(grid: Grid1D, data: InitialData, t: float) -> State:
    """Reference solution by characteristics: u(x, t) = u0(x - a*t), wrapped.

    The shift is reduced modulo the domain length first, so whole-period
    translations (including t = 0) reproduce the initial sample exactly.
    """
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    shift = math.fmod(grid.a * t, grid.length)
    if shift == 0.0:
        x = grid.points
    else:
        x = grid.points - shift
        x = np.where(x < grid.x_lo, x + grid.length, x)
        x = np.where(x >= grid.x_hi, x - grid.length, x)
    return State(grid=grid, values=_eval_on_points(grid, data, x), time=float(t))
