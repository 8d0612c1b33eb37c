"""Command-line interface.

    nekrasov compute {zx0|zx1|zp2|zx1-fact} --w0 INT --w1 INT --k FRAC --max-n INT
                     [--json] [--seed U64] [--trials INT] [--threads INT]
    nekrasov check {main|mult|symmetry|must|all}   (same flags)
    nekrasov walls --v0 INT --v1 INT [--json]
    nekrasov imo-point --eps1 FRAC --eps2 FRAC --a FRAC,... --m FRAC,... [--k FRAC]

Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage error,
3 internal error (vanishing weight / resampling exhausted).

``--max-n N`` truncates at max4n = 4N + w1, i.e. N whole instanton levels
above the base grade (for ``compute zp2`` it simply truncates at q^N).
``NEKRASOV_THREADS`` overrides ``--threads``; both are accepted for
interface stability, but evaluation is sequential either way, so output
is byte-identical for any thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .diagrams import FrameData, HalfInt, enum_walls
from .exact import (
    EPS1,
    EPS2,
    coeff_eval,
    format_rational,
    parse_rational,
    scope_vars,
    var_a,
    var_m,
)
from .localization import VanishingWeight
from .series import QSeries, map_to_imo, series_zp2, series_zx0, series_zx1, series_zx1_factorized
from .verify import (
    ResampleExhausted,
    SampleConfig,
    VerificationReport,
    check_factorization,
    check_main,
    check_recursion_must,
    check_symmetry,
    sample_point_with_stats,
    union_pole_forms,
)

DEFAULT_SEED = 161
DEFAULT_TRIALS = 5

_CHECKS = {
    "main": check_main,
    "mult": check_factorization,
    "symmetry": check_symmetry,
    "must": check_recursion_must,
}


def _half_int(text: str) -> HalfInt:
    return HalfInt.parse(text)


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise ValueError("seed must fit in 64 unsigned bits")
    return value


def _fraction_list(text: str) -> list[Fraction]:
    return [parse_rational(part) for part in text.split(",") if part != ""]


def _add_series_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--w0", type=int, required=True, help="framing slots of color 0")
    sub.add_argument("--w1", type=int, required=True, help="framing slots of color 1")
    sub.add_argument("--k", type=_half_int, required=True,
                     help="total first-Chern datum, 'p' or 'p/2'")
    sub.add_argument("--max-n", type=int, required=True, dest="max_n",
                     help="instanton levels above the base grade")
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--seed", type=_u64, default=DEFAULT_SEED)
    sub.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    sub.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nekrasov",
        description="Exact Nekrasov partition functions on the A1 orbifold "
        "and its resolution, with identity checks by rational sampling.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="compute one series and print it")
    compute.add_argument("target", choices=["zx0", "zx1", "zp2", "zx1-fact"])
    _add_series_flags(compute)

    check = commands.add_parser("check", help="verify functional equations")
    check.add_argument("target", choices=["main", "mult", "symmetry", "must", "all"])
    _add_series_flags(check)

    walls = commands.add_parser("walls", help="list walls for a dimension vector")
    walls.add_argument("--v0", type=int, required=True)
    walls.add_argument("--v1", type=int, required=True)
    walls.add_argument("--json", action="store_true")

    imo = commands.add_parser(
        "imo-point", help="convert an evaluation point to the alternate convention"
    )
    imo.add_argument("--eps1", type=parse_rational, required=True)
    imo.add_argument("--eps2", type=parse_rational, required=True)
    imo.add_argument("--a", type=_fraction_list, required=True,
                     help="comma-separated framing values, one per slot")
    imo.add_argument("--m", type=_fraction_list, required=True,
                     help="comma-separated mass values, two per slot")
    imo.add_argument("--k", type=_half_int, default=None,
                     help="optionally report the flipped total Chern datum c = -k")
    return parser


def _resolve_threads(parser: argparse.ArgumentParser, args) -> int:
    env = os.environ.get("NEKRASOV_THREADS")
    if env is not None:
        try:
            threads = int(env)
        except ValueError:
            parser.error(f"NEKRASOV_THREADS must be an integer, got {env!r}")
        if threads < 1:
            parser.error("NEKRASOV_THREADS must be >= 1")
        return threads
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    return args.threads


def _validated_frame(parser: argparse.ArgumentParser, args) -> FrameData:
    if args.w0 < 0 or args.w1 < 0 or args.w0 + args.w1 < 1:
        parser.error("need --w0, --w1 >= 0 with w0 + w1 >= 1")
    if args.max_n < 0:
        parser.error("--max-n must be >= 0")
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    return FrameData(args.w0, args.w1)


def _build_series(args, frame: FrameData, max4n: int) -> QSeries:
    if args.target == "zx0":
        return series_zx0(frame, args.k, max4n)
    if args.target == "zx1":
        return series_zx1(frame, args.k, max4n)
    if args.target == "zx1-fact":
        return series_zx1_factorized(frame, args.k, max4n)
    return series_zp2(frame.r, args.max_n)


def _cmd_compute(parser: argparse.ArgumentParser, args) -> int:
    frame = _validated_frame(parser, args)
    _resolve_threads(parser, args)
    max4n = 4 * args.max_n + frame.w1
    series = _build_series(args, frame, max4n)
    cfg = SampleConfig(seed=args.seed, trials=args.trials)
    pole_forms = union_pole_forms(series)
    points, resamples = [], []
    for trial in range(cfg.trials):
        point, redraws = sample_point_with_stats(cfg, trial, pole_forms, frame.r)
        points.append(point)
        resamples.append(redraws)
    grades = [
        {
            "grade4n": g,
            "n": format_rational(Fraction(g, 4)),
            "values": [
                format_rational(coeff_eval(series.coefficient(g), p)) for p in points
            ],
        }
        for g in series.grades()
    ]
    payload = {
        "series": args.target,
        "w": [frame.w0, frame.w1],
        "k": str(args.k),
        "max_4n": series.max_grade,
        "grade_offset": series.offset,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "points": [
            {v.name: format_rational(p[v]) for v in scope_vars(frame.r)}
            for p in points
        ],
        "resamples": resamples,
        "grades": grades,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    print(
        f"series={args.target} w=({frame.w0},{frame.w1}) k={args.k} "
        f"max_4n={series.max_grade} grade_offset={series.offset} "
        f"seed={cfg.seed} trials={cfg.trials}"
    )
    for trial, point in enumerate(points):
        rendered = ", ".join(
            f"{v.name}={format_rational(point[v])}" for v in scope_vars(frame.r)
        )
        print(f"point[{trial}]: {rendered}")
    for entry in grades:
        print(
            f"grade {entry['grade4n']} (n={entry['n']}): "
            + " ".join(entry["values"])
        )
    return 0


def _print_report(report: VerificationReport) -> None:
    head = report.to_dict()
    print(
        f"[{head['check']}] w=({head['w'][0]},{head['w'][1]}) k={head['k']} "
        f"max_4n={head['max_4n']} seed={head['seed']} trials={head['trials']}"
    )
    for record in report.grades:
        tag = "".join(f" {key}={value}" for key, value in record.tags.items())
        cells = []
        for lhs, rhs in record.values:
            if lhs == rhs:
                cells.append("ok")
            else:
                cells.append(f"MISMATCH lhs={format_rational(lhs)} rhs={format_rational(rhs)}")
        print(f"  grade {record.grade4n}{tag}: " + " ".join(cells))
    print("PASS" if report.passed else "FAIL")


def _cmd_check(parser: argparse.ArgumentParser, args) -> int:
    frame = _validated_frame(parser, args)
    _resolve_threads(parser, args)
    max4n = 4 * args.max_n + frame.w1
    cfg = SampleConfig(seed=args.seed, trials=args.trials)
    if args.target == "all":
        names = ["main", "mult", "symmetry"]
        if args.k.doubled >= 0:
            names.append("must")
    else:
        names = [args.target]
    if "must" in names and args.k.doubled < 0:
        parser.error("check must requires k >= 0")
    reports = [_CHECKS[name](frame, args.k, max4n, cfg) for name in names]
    if args.json:
        if args.target == "all":
            print(json.dumps([r.to_dict() for r in reports], indent=2))
        else:
            print(json.dumps(reports[0].to_dict(), indent=2))
    else:
        for report in reports:
            _print_report(report)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_walls(args) -> int:
    walls = enum_walls(args.v0, args.v1)
    if args.json:
        entries = []
        for wall in walls:
            entry = {"kind": wall.kind}
            entry["m" if wall.kind == "real" else "p"] = wall.index
            entry["root"] = list(wall.root)
            entries.append(entry)
        print(json.dumps({"v": [args.v0, args.v1], "walls": entries}, indent=2))
        return 0
    for wall in walls:
        label = "m" if wall.kind == "real" else "p"
        print(f"{wall.kind} {label}={wall.index} root=({wall.root[0]},{wall.root[1]})")
    return 0


def _cmd_imo_point(parser: argparse.ArgumentParser, args) -> int:
    r = len(args.a)
    if r < 1:
        parser.error("--a needs at least one value")
    if len(args.m) != 2 * r:
        parser.error(f"--m needs exactly {2 * r} values for {r} framing slots")
    frame = FrameData(r, 0)  # only r matters for the conversion
    point = {EPS1: args.eps1, EPS2: args.eps2}
    for alpha, value in enumerate(args.a, start=1):
        point[var_a(alpha)] = value
    for f, value in enumerate(args.m, start=1):
        point[var_m(f)] = value
    converted = map_to_imo(point, frame)
    for name, value in converted.items():
        print(f"{name} = {format_rational(value)}")
    if args.k is not None:
        print(f"c = {-args.k}")
    return 0


_VALUE_FLAGS = {"--k", "--eps1", "--eps2", "--a", "--m"}


def _merge_negative_values(argv: list) -> list:
    """Rewrite ["--k", "-1/2"] as ["--k=-1/2"] so argparse does not read a
    negative fraction as an option string."""
    out, i = [], 0
    while i < len(argv):
        arg = argv[i]
        if arg in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_negative_values(list(argv)))
    try:
        if args.command == "compute":
            return _cmd_compute(parser, args)
        if args.command == "check":
            return _cmd_check(parser, args)
        if args.command == "walls":
            return _cmd_walls(args)
        return _cmd_imo_point(parser, args)
    except (VanishingWeight, ResampleExhausted) as err:
        print(f"nekrasov: internal error: {err}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
