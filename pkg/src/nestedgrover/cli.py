"""Command-line entry point: ``nestedgrover {structured,flat,classical,sweep,fit}``.

Exit codes: 0 success, 2 invalid arguments, 3 infeasible size.
"""

from __future__ import annotations

import argparse
import logging
import sys

from ._validation import InfeasibleSizeError, check_feasible
from .amplification import ScheduleMode
from .harness import (
    Algorithm,
    fit_scaling,
    parse_sweep_config,
    read_csv,
    rows_to_csv,
    run_classical_row,
    run_flat_row,
    run_structured_row,
    run_sweep,
    write_csv,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3

log = logging.getLogger("nestedgrover")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nestedgrover", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    modes = [m.value for m in ScheduleMode]
    p = sub.add_parser("structured", help="nested quantum search on an L x L grid")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=modes, default="paper")
    p.add_argument("--csv", metavar="PATH")

    p = sub.add_parser("flat", help="nested quantum search on a single register")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=modes, default="paper")
    p.add_argument("--csv", metavar="PATH")

    p = sub.add_parser("classical", help="classical scan baseline")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", metavar="PATH")

    p = sub.add_parser("sweep", help="run a key=value sweep config and write CSV")
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")

    p = sub.add_parser("fit", help="log-log fit of total_calls from a sweep CSV")
    p.add_argument("--in", dest="path", required=True, metavar="PATH")
    p.add_argument("--x", choices=["ml", "n"], required=True)
    p.add_argument("--algorithm", choices=[a.value for a in Algorithm])
    p.add_argument("--per-m", action="store_true", help="fit each M separately")
    return parser


def _emit(row, path):
    text = rows_to_csv([row])
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _run(args) -> int:
    if args.command == "structured":
        check_feasible(args.L, two_register=True)
        _emit(run_structured_row(args.L, args.M, args.seed, args.mode), args.csv)
    elif args.command == "flat":
        check_feasible(args.N, two_register=False)
        _emit(run_flat_row(args.N, args.M, args.seed, args.mode), args.csv)
    elif args.command == "classical":
        _emit(run_classical_row(args.L, args.M, args.seed), args.csv)
    elif args.command == "sweep":
        with open(args.config) as fh:
            config = parse_sweep_config(fh.read())
        rows = run_sweep(config)
        write_csv(rows, args.out)
        log.info("wrote %d rows to %s", len(rows), args.out)
    elif args.command == "fit":
        rows = read_csv(args.path)
        algorithms = [Algorithm(args.algorithm)] if args.algorithm else sorted(
            {r.algorithm for r in rows}, key=lambda a: a.value)
        for alg in algorithms:
            subset = [r for r in rows if r.algorithm is alg]
            groups = sorted({r.M for r in subset}) if args.per_m else [None]
            for M in groups:
                part = subset if M is None else [r for r in subset if r.M == M]
                label = alg.value if M is None else f"{alg.value} M={M}"
                print(f"{label}: {fit_scaling(part, args.x)}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return _run(args)
    except InfeasibleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
