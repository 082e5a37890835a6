"""Experiment driver: stepping loop, config handling, CSV artifacts.

A run steps from t = 0 to t_final, shortening the last step so the end
time is hit exactly (the shortened step uses its own mesh ratio when the
scheme's coefficients depend on it).  All delimited output is written
with 17 significant digits so identical configs produce bit-identical
files.
"""
from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .grid import Grid1D, InitialData, State, exact_solution, make_grid, parse_initial, sample_initial
from .metrics import RunReport, Verdict, assess, spec_at_lambda
from .schemes import SchemeSpec, catalog, eno2_coefficients, step
from .smoothness import theta
from .stability import classify_state, dds_interval, is_uno

FMT = ".17g"


@dataclass(frozen=True)
class RunConfig:
    """Everything one experiment needs; defaults reproduce the reference
    smooth-sine run (second-order centred scheme, CFL 0.8, N = 100, t = 6)."""

    scheme: str = "lax-wendroff"
    a: float = 1.0
    cfl: float = 0.8
    n_cells: int = 100
    x_lo: float = -1.0
    x_hi: float = 1.0
    t_final: float = 6.0
    ic: str = "sine"
    eps: float | None = None
    tv_tol: float | None = None
    out_dir: Path | None = None
    snapshot_stride: int = 100
    plot: bool = True

    def __post_init__(self) -> None:
        if self.t_final < 0.0:
            raise ValueError("t_final must be nonnegative")
        if self.snapshot_stride < 1:
            raise ValueError("snapshot stride must be >= 1")

    def initial_data(self) -> InitialData:
        return parse_initial(self.ic)

    def grid(self) -> Grid1D:
        return make_grid(self.x_lo, self.x_hi, self.n_cells, self.cfl, self.a)


@dataclass
class RunResult:
    config: RunConfig
    grid: Grid1D
    spec: SchemeSpec
    history: list[State]
    lam_history: list[float]
    exact_final: State
    report: RunReport
    files: dict = field(default_factory=dict)


def _plan_steps(t_final: float, k: float) -> list[float]:
    """Step sizes covering [0, t_final]; the last one may be shortened."""
    if t_final == 0.0:
        return []
    n = int(math.ceil(t_final / k - 1e-12))
    ks = [k] * (n - 1)
    ks.append(t_final - (n - 1) * k)
    return ks


def simulate(config: RunConfig) -> RunResult:
    """Step the configured scheme to t_final and assess the history.

    Divergence (any non-finite value) aborts the stepping; the partial
    history is still assessed and reported.
    """
    grid = config.grid()
    data = config.initial_data()
    spec = catalog(config.scheme, config.a, grid.lam)
    state = sample_initial(grid, data)
    history = [state]
    lam_history = [grid.lam]
    ks = _plan_steps(config.t_final, grid.k)
    for j, kj in enumerate(ks):
        lam_j = kj / grid.h
        spec_j = spec_at_lambda(spec, lam_j)
        state = step(spec_j, state)
        if j == len(ks) - 1:
            state = state.replace(time=config.t_final)
        history.append(state)
        lam_history.append(lam_j)
        if not state.finite:
            break
    exact_final = exact_solution(grid, data, history[-1].time if history[-1].finite else config.t_final)
    report = assess(
        history,
        exact_final if history[-1].finite else None,
        spec,
        eps=config.eps,
        tv_tol=config.tv_tol,
        lam_history=lam_history,
    )
    return RunResult(
        config=config,
        grid=grid,
        spec=spec,
        history=history,
        lam_history=lam_history,
        exact_final=exact_final,
        report=report,
    )


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", newline="\n") as f:
        f.write(text)
    os.replace(tmp, path)


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, FMT)
    return str(x)


def write_snapshot(path: Path, state: State, exact: State) -> None:
    lines = ["x,u_numeric,u_exact"]
    for x, un, ue in zip(state.grid.points, state.values, exact.values):
        lines.append(f"{x:{FMT}},{un:{FMT}},{ue:{FMT}}")
    _atomic_write(path, "\n".join(lines) + "\n")


def write_report_csv(path: Path, result: RunResult) -> None:
    r = result.report
    c = result.config
    rows = [
        ("scheme", c.scheme),
        ("a", _fmt(c.a)),
        ("cfl", _fmt(c.cfl)),
        ("lambda", _fmt(result.grid.lam)),
        ("n_cells", c.n_cells),
        ("x_lo", _fmt(c.x_lo)),
        ("x_hi", _fmt(c.x_hi)),
        ("t_final", _fmt(c.t_final)),
        ("ic", c.ic),
        ("steps", len(r.steps) - 1),
        ("eps", _fmt(r.eps)),
        ("tv_tol", _fmt(r.tv_tol)),
        ("initial_extrema", r.initial.extrema_count),
        ("max_extrema", r.max_extrema),
        ("final_extrema", r.final.extrema_count),
        ("initial_tv", _fmt(r.initial.total_variation)),
        ("max_tv", _fmt(r.max_total_variation)),
        ("final_tv", _fmt(r.final.total_variation)),
        ("max_principle_violations", r.total_max_principle_violations),
        ("dds_violations", r.total_dds_violations),
        ("l1_error", _fmt(r.l1_error)),
        ("l2_error", _fmt(r.l2_error)),
        ("linf_error", _fmt(r.linf_error)),
        ("first_violation_time", "" if r.first_violation_time is None else _fmt(r.first_violation_time)),
        ("verdict", r.verdict.value),
    ]
    _atomic_write(path, "key,value\n" + "\n".join(f"{k},{v}" for k, v in rows) + "\n")


def write_history_csv(path: Path, report: RunReport) -> None:
    lines = ["step,time,extrema_count,total_variation,max_principle_violations,dds_violations"]
    for j, s in enumerate(report.steps):
        lines.append(
            f"{j},{s.time:{FMT}},{s.extrema_count},{s.total_variation:{FMT}},"
            f"{s.max_principle_violations},{s.dds_violations}"
        )
    _atomic_write(path, "\n".join(lines) + "\n")


def _snapshot_steps(n_states: int, stride: int) -> list[int]:
    idx = list(range(0, n_states, stride))
    if (n_states - 1) not in idx:
        idx.append(n_states - 1)
    return idx


def write_plot_script(path: Path, snapshot_names: list[str]) -> None:
    """Plain-text plotting commands referencing the CSV artifacts."""
    lines = [
        "# plotting commands for the run artifacts (CSV referenced by name)",
        "import csv",
        "import matplotlib.pyplot as plt",
        "",
        "def load(name):",
        "    with open(name) as f:",
        "        rows = list(csv.reader(f))",
        "    cols = list(zip(*[[float(v) for v in r] for r in rows[1:]]))",
        "    return rows[0], cols",
        "",
    ]
    for name in snapshot_names:
        lines += [
            f"_, (x, u, ue) = load({name!r})",
            "plt.figure()",
            "plt.plot(x, ue, 'k-', label='exact')",
            "plt.plot(x, u, 'o-', ms=3, label='numeric')",
            "plt.xlabel('x'); plt.ylabel('u'); plt.legend()",
            f"plt.savefig({name!r}.replace('.csv', '.png'), dpi=150)",
            "",
        ]
    lines += [
        "_, cols = load('history.csv')",
        "step, time, extrema, tv = cols[0], cols[1], cols[2], cols[3]",
        "plt.figure()",
        "plt.plot(time, tv, label='total variation')",
        "plt.plot(time, extrema, label='extrema count')",
        "plt.xlabel('t'); plt.legend()",
        "plt.savefig('history.png', dpi=150)",
    ]
    _atomic_write(path, "\n".join(lines) + "\n")


def run(config: RunConfig) -> RunResult:
    """Simulate and, when an output directory is set, write the artifacts:
    snapshots, report.csv, history.csv, a plot script, and (unless turned
    off) rendered figures next to the CSVs."""
    result = simulate(config)
    if config.out_dir is None:
        return result
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: dict[str, Path] = {}
    data = config.initial_data()
    snap_names = []
    for j in _snapshot_steps(len(result.history), config.snapshot_stride):
        st = result.history[j]
        if not st.finite:
            continue
        name = f"snapshot_{j:06d}.csv"
        ex = exact_solution(result.grid, data, st.time)
        write_snapshot(out / name, st, ex)
        snap_names.append(name)
        files[name] = out / name
    write_report_csv(out / "report.csv", result)
    files["report.csv"] = out / "report.csv"
    write_history_csv(out / "history.csv", result.report)
    files["history.csv"] = out / "history.csv"
    write_plot_script(out / "plot.py", snap_names)
    files["plot.py"] = out / "plot.py"
    if config.plot:
        from . import plotting

        files["solution.png"] = plotting.solution_figure(out / "solution.png", result)
        files["history.png"] = plotting.history_figure(out / "history.png", result.report)
    result.files = files
    return result


def violation_rows(result: RunResult) -> list[tuple]:
    """(step, time, index, theta_or_coefficient, region) for every
    per-point membership violation over the whole history."""
    rows = []
    spec = result.spec
    hybrid = not spec.is_linear
    for j, st in enumerate(result.history):
        if not st.finite:
            break
        spec_j = spec_at_lambda(spec, result.lam_history[j])
        cls = classify_state(spec_j, st)
        if hybrid:
            region = "D in [0,1]"
            d = eno2_coefficients(st.values, spec_j.a, spec_j.lam)
            for i in cls.violation_indices:
                rows.append((j, st.time, int(i), float(d[i]), region))
        else:
            region = cls.interval.describe()
            for i in cls.violation_indices:
                tv = theta(st, int(i) + cls.interval.offset, cls.interval.direction)
                rows.append((j, st.time, int(i), tv.value, region))
    return rows


def scan(config: RunConfig) -> tuple[RunResult, list[tuple]]:
    """Run and record every (step, index) membership violation to CSV."""
    result = run(config)
    rows = violation_rows(result)
    if config.out_dir is not None:
        out = Path(config.out_dir)
        lines = ["step,time,index,theta,region"]
        for step_j, t, i, th, region in rows:
            lines.append(f"{step_j},{t:{FMT}},{i},{th:{FMT}},\"{region}\"")
        _atomic_write(out / "violations.csv", "\n".join(lines) + "\n")
        result.files["violations.csv"] = out / "violations.csv"
    return result, rows


@dataclass(frozen=True)
class SweepRow:
    n_cells: int
    h: float
    l1_error: float
    eoc: float | None


def sweep(config: RunConfig, n_list: list[int]) -> list[SweepRow]:
    """Refinement study: L1 error at t_final for each resolution plus the
    empirical order log2(e_N / e_2N) between consecutive rows."""
    if not n_list:
        raise ValueError("n_list must be non-empty")
    errors: list[SweepRow] = []
    prev: float | None = None
    for n in n_list:
        res = simulate(replace(config, n_cells=n, out_dir=None, plot=False))
        if res.report.verdict is Verdict.DIVERGED:
            raise RuntimeError(f"sweep run at N={n} diverged; no error to report")
        e = res.report.l1_error
        eoc = None if prev is None else math.log2(prev / e)
        errors.append(SweepRow(n, res.grid.h, e, eoc))
        prev = e
    if config.out_dir is not None:
        out = Path(config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        lines = ["n_cells,h,l1_error,eoc"]
        for row in errors:
            eoc_s = "" if row.eoc is None else format(row.eoc, FMT)
            lines.append(f"{row.n_cells},{row.h:{FMT}},{row.l1_error:{FMT}},{eoc_s}")
        _atomic_write(out / "eoc.csv", "\n".join(lines) + "\n")
        if config.plot:
            from . import plotting

            plotting.convergence_figure(out / "convergence.png", errors)
    return errors


def describe_dds(scheme: str, a: float, cfl: float) -> str:
    """Human-readable stability-region description for one scheme."""
    lam = cfl / abs(a)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = catalog(scheme, a, lam)
    lines = [f"scheme {spec.name}  a={_fmt(a)}  lambda={_fmt(lam)}  cfl={_fmt(spec.cfl)}"]
    if spec.is_linear:
        lines.append(f"family {spec.family.value}  alpha={_fmt(spec.alpha)}  beta={_fmt(spec.beta)}")
        region = dds_interval(spec)
        lines.append(f"region {region.describe()}")
    else:
        lines.append("family hybrid-eno2 (four-case coefficient; no affine region)")
        lines.append("guaranteed D in [0,1] for cfl <= 0.5")
    lines.append(f"uno {'yes' if is_uno(spec) else 'no'}")
    return "\n".join(lines)


def write_dds_csv(path: Path, scheme: str, a: float, cfl: float) -> None:
    lam = cfl / abs(a)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = catalog(scheme, a, lam)
    header = "scheme,a,cfl,family,alpha,beta,shape,lo,hi,theta_direction,theta_offset,uno"
    if spec.is_linear:
        region = dds_interval(spec)
        row = (
            f"{spec.name},{_fmt(a)},{_fmt(spec.cfl)},{spec.family.value},"
            f"{_fmt(spec.alpha)},{_fmt(spec.beta)},{region.shape.value},"
            f"{region.lo:{FMT}},{region.hi:{FMT}},{region.direction.value},{region.offset},"
            f"{int(is_uno(spec))}"
        )
    else:
        row = f"{spec.name},{_fmt(a)},{_fmt(spec.cfl)},{spec.family.value},,,,,,,,{int(is_uno(spec))}"
    _atomic_write(path, header + "\n" + row + "\n")


def parse_config_file(path: Path) -> dict[str, str]:
    """Flat key=value file; '#' starts a comment; keys use dashes or
    underscores interchangeably."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


_CONFIG_TYPES = {
    "scheme": str,
    "a": float,
    "cfl": float,
    "n_cells": int,
    "x_lo": float,
    "x_hi": float,
    "t_final": float,
    "ic": str,
    "eps": float,
    "tv_tol": float,
    "out_dir": Path,
    "snapshot_stride": int,
    "plot": lambda s: s.lower() in ("1", "true", "yes", "on"),
}


def build_config(file_values: dict[str, str] | None = None, **overrides) -> RunConfig:
    """Merge defaults < config file < explicit overrides (CLI flags win)."""
    values: dict = {}
    if file_values:
        for key, raw in file_values.items():
            if key not in _CONFIG_TYPES:
                raise ValueError(f"unknown config key {key!r}")
            values[key] = _CONFIG_TYPES[key](raw)
    for key, val in overrides.items():
        if val is not None:
            values[key] = val
    return RunConfig(**values)
