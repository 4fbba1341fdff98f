"""Command-line entry point.

Subcommands:

    simulate  run a Monte-Carlo experiment, write curves.csv + finals.csv
    bounds    write per-arm bound-coefficient CSVs (lower / upper / standard)
    ratio     sweep mu1 and write the TS / eps-TS bound-ratio CSV
    verify    run the grid-based property suites

Exit codes: 0 ok, 1 verification failure, 2 config error, 3 I/O error.
Thread count resolution: --threads, then the LENIENT_BANDITS_THREADS env
var, then available parallelism.  Results never depend on it.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from pathlib import Path

from . import bounds as bounds_mod
from .config import (
    ConfigError,
    apply_overrides,
    build_bounds_params,
    build_experiment_config,
    build_ratio_params,
    load_config,
)
from .environments import BanditInstance
from .kl_math import bernoulli_kl, scaled_kl
from .simulator import (
    run_experiment,
    write_curves_csv,
    write_finals_csv,
    write_per_seed_csv,
)
from .verify import DEFAULT_GRID_DENSITY, run_all_suites

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.6g}"


def _resolve_threads(arg: str | None) -> int | None:
    if arg is None:
        arg = os.environ.get("LENIENT_BANDITS_THREADS")
    if arg is None or arg == "auto":
        return None  # simulator default: available parallelism
    n = int(arg)
    if n < 1:
        raise ConfigError(f"thread count must be positive, got {n}")
    return n


def _prepare_out_dir(path_str: str) -> Path:
    out = Path(path_str)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory {out}: {exc}", file=sys.stderr)
        raise
    return out


def _load(args) -> dict:
    values = load_config(args.config)
    values = apply_overrides(values, args.overrides)
    if args.seeds is not None:
        values["n_seeds"] = args.seeds
    if args.seed is not None:
        values["base_seed"] = args.seed
    return values


def cmd_simulate(args) -> int:
    values = _load(args)
    config = build_experiment_config(values)
    threads = _resolve_threads(args.threads)
    t0 = time.perf_counter()
    result = run_experiment(config, threads=threads)
    elapsed = time.perf_counter() - t0
    try:
        out = _prepare_out_dir(args.out)
        write_curves_csv(result, out / "curves.csv")
        write_finals_csv(result, out / "finals.csv")
        if args.per_seed:
            write_per_seed_csv(result, out / "per_seed.csv")
    except OSError:
        return EXIT_IO

    print(f"# {config.n_seeds} seeds, horizon {config.horizon}, {elapsed:.1f}s")
    header = f"{'policy':<12} {'gap_function':<16} {'mean':>9} {'std':>9} {'p99':>9} {'max':>9}"
    print(header)
    for (policy, gap), st in result.stats.items():
        print(
            f"{policy:<12} {gap:<16} {_fmt(st.mean):>9} {_fmt(st.std):>9} "
            f"{_fmt(st.p99):>9} {_fmt(st.max):>9}"
        )
    return EXIT_OK


def cmd_bounds(args) -> int:
    values = _load(args)
    instance, gap_functions = build_bounds_params(values)
    coefficients = {
        "lower": bounds_mod.lower_bound_coefficient,
        "upper": bounds_mod.upper_bound_coefficient,
        "standard": bounds_mod.standard_ts_coefficient,
    }
    try:
        out = _prepare_out_dir(args.out)
        for name, fn in coefficients.items():
            path = out / f"bounds_{name}.csv"
            with open(path, "w", newline="\n") as fh:
                fh.write("gap_function,arm,mean,gap,f_gap,denominator,term\n")
                for f in gap_functions:
                    report = fn(instance, f)
                    label = f.spell()
                    for t in report.per_arm_terms:
                        fh.write(
                            f"{label},{t.arm},{t.mean!r},{t.gap!r},{t.f_gap!r},"
                            f"{'inf' if math.isinf(t.denominator) else repr(t.denominator)},"
                            f"{t.term!r}\n"
                        )
                    fh.write(f"{label},total,,,,,{report.total!r}\n")
                    print(f"{name:<9} {label:<16} total = {_fmt(report.total)}")
    except OSError:
        return EXIT_IO
    return EXIT_OK


def _two_arm_ratio(mu1: float, mu2: float, eps: float, gap) -> str:
    """Serialized TS / eps-variant bound ratio for the two-armed instance.

    For a two-armed problem the gap-function weight cancels, so the ratio is
    the denominator ratio d(mu2/(1-eps), mu1/(1-eps)) / d(mu2, mu1).  That
    agrees with the full coefficient ratio whenever mu1 - mu2 > eps and
    extends it continuously down to the boundary mu1 = mu2 + eps.
    """
    if mu1 > 1.0 or mu1 <= mu2:
        return "nan"
    if mu1 >= 1.0:
        return "nan"  # both coefficients vanish (d(mu2, 1) is infinite)
    if mu1 - mu2 > gap.eps or gap.kind == "standard":
        instance = BanditInstance((mu1, mu2))
        try:
            ratio = bounds_mod.bound_ratio(instance, gap)
        except ValueError:
            return "nan"
        return "inf" if math.isinf(ratio) else repr(ratio)
    if mu1 >= 1.0 - eps:
        return "inf"
    try:
        scaled = scaled_kl(mu2, mu1, eps)
    except ValueError:
        return "nan"
    plain = bernoulli_kl(mu2, mu1)
    return repr(scaled / plain)


def cmd_ratio(args) -> int:
    values = _load(args)
    mu2, eps, gap, grid = build_ratio_params(values)
    degenerate = [mu1 for mu1 in grid if mu1 <= mu2 + eps]
    if degenerate and not args.allow_degenerate:
        raise ConfigError(
            f"mu1 sweep contains {len(degenerate)} point(s) with mu1 <= mu2 + eps "
            f"(first: {degenerate[0]}); pass --allow-degenerate to emit them anyway"
        )
    rows = []
    for mu1 in grid:
        rows.append((mu1, _two_arm_ratio(mu1, mu2, eps, gap)))
    try:
        out = _prepare_out_dir(args.out)
        with open(out / "ratio.csv", "w", newline="\n") as fh:
            fh.write("mu1,ratio\n")
            for mu1, value in rows:
                fh.write(f"{mu1!r},{value}\n")
    except OSError:
        return EXIT_IO
    print(f"wrote {len(rows)} ratio rows to {out / 'ratio.csv'}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all_suites(args.grid_density)
    failed = False
    for suite in results:
        status = "pass" if suite.passed else "FAIL"
        print(f"{status}  {suite.name}: {suite.violations} violations over {suite.checked} points")
        failed = failed or not suite.passed
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lenient-bandits",
        description="Lenient-regret bandit benchmark: simulation, bound coefficients, verification.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, needs_config=True):
        if needs_config:
            p.add_argument("--config", required=True, help="path to a key=value config file")
            p.add_argument("--out", default="out", help="output directory for CSV artifacts")
            p.add_argument("--seeds", type=int, default=None, help="override n_seeds")
            p.add_argument("--seed", type=int, default=None, help="override base_seed")
            p.add_argument(
                "overrides",
                nargs="*",
                default=[],
                metavar="key=value",
                help="config overrides applied before validation",
            )

    p_sim = sub.add_parser("simulate", help="run a Monte-Carlo experiment")
    add_common(p_sim)
    p_sim.add_argument("--threads", default=None, help="worker count or 'auto'")
    p_sim.add_argument("--per-seed", action="store_true", help="also write per_seed.csv")
    p_sim.set_defaults(fn=cmd_simulate)

    p_bounds = sub.add_parser("bounds", help="write bound-coefficient CSVs")
    add_common(p_bounds)
    p_bounds.set_defaults(fn=cmd_bounds)

    p_ratio = sub.add_parser("ratio", help="sweep mu1 and write the bound-ratio CSV")
    add_common(p_ratio)
    p_ratio.add_argument(
        "--allow-degenerate",
        action="store_true",
        help=(
            "keep sweep points with mu1 <= mu2 + eps instead of failing; "
            "the ratio extends continuously there, nan where undefined"
        ),
    )
    p_ratio.set_defaults(fn=cmd_ratio)

    p_verify = sub.add_parser("verify", help="run the grid-based property suites")
    p_verify.add_argument(
        "--grid-density",
        type=int,
        default=DEFAULT_GRID_DENSITY,
        help=f"grid scale for every suite (default {DEFAULT_GRID_DENSITY})",
    )
    p_verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
