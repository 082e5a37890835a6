"""Command line interface.

Subcommands: run, dds, scan, sweep.  Every config-file key has a flag of
the same name; flags win.  Exit codes: 0 clean, 2 oscillatory,
3 diverged, 1 usage or config error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import driver
from .metrics import Verdict

EXIT_CODES = {Verdict.CLEAN: 0, Verdict.OSCILLATORY: 2, Verdict.DIVERGED: 3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit code 1 instead of argparse's 2
        raise UsageError(message)


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="key=value config file")
    p.add_argument("--scheme", type=str)
    p.add_argument("--a", type=float, dest="a")
    p.add_argument("--cfl", type=float)
    p.add_argument("--n", type=int, dest="n_cells")
    p.add_argument("--x-lo", type=float, dest="x_lo")
    p.add_argument("--x-hi", type=float, dest="x_hi")
    p.add_argument("--t-final", type=float, dest="t_final")
    p.add_argument("--ic", type=str, help="sine|bump|step|constant|linear (params after ':')")
    p.add_argument("--eps", type=float, help="extrema census tolerance")
    p.add_argument("--tv-tol", type=float, dest="tv_tol", help="total-variation growth tolerance")
    p.add_argument("--out-dir", type=Path, dest="out_dir")
    p.add_argument("--snapshot-stride", type=int, dest="snapshot_stride")
    p.add_argument("--no-plot", action="store_true", help="skip figure rendering")


def _build_config(args: argparse.Namespace) -> driver.RunConfig:
    file_values = driver.parse_config_file(args.config) if args.config else None
    overrides = {
        key: getattr(args, key)
        for key in ("scheme", "a", "cfl", "n_cells", "x_lo", "x_hi", "t_final",
                    "ic", "eps", "tv_tol", "out_dir", "snapshot_stride")
    }
    if args.no_plot:
        overrides["plot"] = False
    return driver.build_config(file_values, **overrides)


def _print_report(result: driver.RunResult) -> None:
    r = result.report
    print(f"scheme={result.spec.name} ic={result.config.ic} cfl={result.spec.cfl:g} "
          f"n={result.grid.n_cells} t_final={result.config.t_final:g}")
    print(f"steps={len(r.steps) - 1} extrema {r.initial.extrema_count}->{r.final.extrema_count} "
          f"(max {r.max_extrema}) tv {r.initial.total_variation:.6g}->{r.final.total_variation:.6g}")
    print(f"errors l1={r.l1_error:.6g} l2={r.l2_error:.6g} linf={r.linf_error:.6g}")
    if r.first_violation_time is not None:
        print(f"first oscillation at t={r.first_violation_time:.6g}")
    print(f"verdict {r.verdict.value}")
    if result.files:
        print("wrote " + " ".join(sorted(str(p) for p in result.files.values())))


def main(argv: list[str] | None = None) -> int:
    parser = _Parser(prog="advlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="time-step one experiment and report")
    _add_run_flags(p_run)

    p_dds = sub.add_parser("dds", help="print a scheme's stability region")
    p_dds.add_argument("--scheme", type=str, required=True)
    p_dds.add_argument("--a", type=float, dest="a", default=1.0)
    p_dds.add_argument("--cfl", type=float, default=0.8)
    p_dds.add_argument("--out-dir", type=Path, dest="out_dir")

    p_scan = sub.add_parser("scan", help="run and log every membership violation")
    _add_run_flags(p_scan)

    p_sweep = sub.add_parser("sweep", help="refinement study with empirical orders")
    _add_run_flags(p_sweep)
    p_sweep.add_argument("--n-list", type=str, dest="n_list", default="50,100,200,400")

    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            result = driver.run(_build_config(args))
            _print_report(result)
            return EXIT_CODES[result.report.verdict]
        if args.command == "dds":
            print(driver.describe_dds(args.scheme, args.a, args.cfl))
            if args.out_dir is not None:
                args.out_dir.mkdir(parents=True, exist_ok=True)
                path = args.out_dir / "dds.csv"
                driver.write_dds_csv(path, args.scheme, args.a, args.cfl)
                print(f"wrote {path}")
            return 0
        if args.command == "scan":
            result, rows = driver.scan(_build_config(args))
            _print_report(result)
            print(f"violations {len(rows)}")
            return EXIT_CODES[result.report.verdict]
        if args.command == "sweep":
            n_list = [int(s) for s in args.n_list.split(",") if s.strip()]
            rows = driver.sweep(_build_config(args), n_list)
            print("n_cells,l1_error,eoc")
            for row in rows:
                eoc = "" if row.eoc is None else f"{row.eoc:.3f}"
                print(f"{row.n_cells},{row.l1_error:.6g},{eoc}")
            return 0
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
