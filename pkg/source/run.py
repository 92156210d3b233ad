#!/usr/bin/env python3
"""
Command line for the lattice reduction library.

    gen     write a random HNF basis
    reduce  reduce a basis file with one algorithm
    verify  check a basis file against a reducedness notion
    bench   run the benchmark grid, write CSV / JSON lines
    report  markdown summary of a bench CSV

Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""

import argparse
import logging
import sys
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent
if str(BASE_DIR) not in sys.path:
    sys.path.insert(0, str(BASE_DIR))

from BENCH.aggregate import aggregate
from BENCH.bench import AlgoSpec, BenchPlan, parse_algos, parse_dims, run_bench
from BENCH.metrics import hermite_root_factor
from BENCH.records import STATUS_REJECTED, read_csv, write_csv, write_json_stream
from BENCH.tables import render_report, write_report
from BKZ.bkz import is_bkz_reduced
from DEEPLLL.deep_lll import is_deep_reduced
from LLL.lll import is_lll_reduced
from POTLLL.pot_lll import is_pot_reduced
from common import config
from common.basis_io import read_basis, write_basis
from common.errors import ContractViolation, DependentRows, FloatRangeError, LatticeError, ParseError
from common.io_json import write_result_json
from common.latgen import GenSpec, generate_random_hnf

logger = logging.getLogger("potlll")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

INPUT_ERRORS = (ParseError, ContractViolation, DependentRows, FloatRangeError)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Lattice basis reduction: LLL, DeepLLL, PotLLL, BKZ.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a random HNF basis")
    gen.add_argument("--dim", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--bits", type=int, default=None, help="modulus bit length (default 10*dim)")
    gen.add_argument("--critical", action="store_true",
                     help="critical basis A_n (rejected: real-valued bases have no file form)")
    gen.add_argument("--out", required=True)

    red = sub.add_parser("reduce", help="reduce a basis file")
    red.add_argument("--algo", choices=AlgoSpec.KINDS, required=True)
    red.add_argument("--delta", type=float, default=config.DEFAULT_DELTA)
    red.add_argument("--beta", type=int, default=None)
    red.add_argument("--no-preprocess", action="store_true", help="skip the LLL preprocessing")
    red.add_argument("--in", dest="input", required=True)
    red.add_argument("--out", required=True)
    red.add_argument("--stats-json", default=None)

    ver = sub.add_parser("verify", help="check a basis file for reducedness")
    ver.add_argument("--notion", choices=["lll", "deep", "pot", "bkz"], required=True)
    ver.add_argument("--delta", type=float, default=config.DEFAULT_DELTA)
    ver.add_argument("--beta", type=int, default=None)
    ver.add_argument("--exact", action="store_true", help="exact rational PotLLL oracle (n <= 10)")
    ver.add_argument("--in", dest="input", required=True)

    bench = sub.add_parser("bench", help="run the benchmark grid")
    bench.add_argument("--dims", required=True, help="A:B:STEP (inclusive), or a comma list")
    bench.add_argument("--seeds", type=int, required=True, help="seeds 0..N-1")
    bench.add_argument("--algos", required=True, help="e.g. lll,potlll,potlll2,deeplll:5,bkz:5")
    bench.add_argument("--delta", type=float, default=config.DEFAULT_DELTA)
    bench.add_argument("--bits", type=int, default=None)
    bench.add_argument("--no-preprocess", action="store_true")
    bench.add_argument("--compare-preprocess", action="store_true",
                       help="run every cell with and without preprocessing")
    bench.add_argument("--workers", type=int, default=1)
    bench.add_argument("--csv", required=True)
    bench.add_argument("--json", default=None)
    bench.add_argument("--report", default=None, help="markdown summary file")

    rep = sub.add_parser("report", help="markdown summary of a bench CSV")
    rep.add_argument("--csv", required=True)
    rep.add_argument("--delta", type=float, default=config.DEFAULT_DELTA)
    rep.add_argument("--out", default=None)

    return parser


def configure_logging(args) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)


def cmd_gen(args) -> int:
    if args.critical:
        logger.error("critical bases are real-valued and cannot be written to a basis file")
        return EXIT_USAGE
    basis = generate_random_hnf(GenSpec(args.dim, args.seed, args.bits))
    write_basis(args.out, basis)
    logger.info(f"[gen] n={basis.n} seed={args.seed} -> {args.out}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    algo = AlgoSpec(args.algo, args.beta)
    basis = read_basis(args.input)
    params = algo.params(args.delta, not args.no_preprocess)
    stats = algo.reduce(basis, params)
    write_basis(args.out, basis)

    if args.stats_json:
        entry = {
            "dim": basis.n,
            "delta": args.delta,
            "preprocess": params.preprocess,
            "hermite_root": hermite_root_factor(basis),
            **stats.to_dict(),
        }
        write_result_json(algo.name, args.stats_json, entry)

    logger.info(f"[{algo.name}] n={basis.n} insertions={stats.insertions} "
                f"passes={stats.loop_iterations} time={stats.elapsed:.3f}s")
    return EXIT_OK


def cmd_verify(args) -> int:
    basis = read_basis(args.input)
    beta = args.beta or config.DEFAULT_BETA
    if args.notion == "lll":
        result = is_lll_reduced(basis, args.delta)
    elif args.notion == "deep":
        result = is_deep_reduced(basis, args.delta, beta)
    elif args.notion == "bkz":
        result = is_bkz_reduced(basis, args.delta, beta)
    else:
        result = is_pot_reduced(basis, args.delta, exact=args.exact)

    if result.ok:
        logger.info(f"VALID: {args.input} is {args.notion}-reduced (delta={args.delta})")
        return EXIT_OK
    v = result.violation
    logger.error(f"INVALID: {args.input} fails the {v.kind} condition at (k, l) = ({v.k}, {v.l}), value {v.value:.6g}")
    return EXIT_FAILED


def cmd_bench(args) -> int:
    if args.seeds < 1:
        raise ContractViolation("--seeds must be >= 1")
    if args.compare_preprocess:
        flags = (True, False)
    else:
        flags = (not args.no_preprocess,)
    plan = BenchPlan(
        dims=parse_dims(args.dims),
        seeds=tuple(range(args.seeds)),
        algos=parse_algos(args.algos),
        preprocess_flags=flags,
        delta=args.delta,
        bits=args.bits,
        workers=args.workers,
    )
    records, rows = run_bench(plan)

    written = write_csv(args.csv, records)
    logger.info(f"[bench] {written} records -> {args.csv}")
    if args.json:
        write_json_stream(args.json, records)
    if args.report:
        write_report(args.report, rows, plan.delta)

    for row in rows:
        logger.info(f"[{row.algo}] n={row.dim} preprocess={row.preprocess} "
                    f"mean={row.mean_hermite_root:.5f} ci=[{row.ci_low:.5f}, {row.ci_high:.5f}] "
                    f"log_time={row.mean_log_time:.3f}")

    rejected = sum(r.status == STATUS_REJECTED for r in records)
    failed = sum(not r.ok for r in records)
    if failed:
        logger.error(f"[bench] {failed} cell(s) failed, {rejected} rejected by an oracle")
        return EXIT_FAILED
    return EXIT_OK


def cmd_report(args) -> int:
    rows = aggregate(read_csv(args.csv))
    if args.out:
        path = write_report(args.out, rows, args.delta)
        logger.info(f"[report] -> {path}")
    else:
        sys.stdout.write(render_report(rows, args.delta))
    return EXIT_OK


HANDLERS = {
    "gen": cmd_gen,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    configure_logging(args)

    try:
        return HANDLERS[args.command](args)
    except INPUT_ERRORS as exc:
        logger.error(f"error: {exc}")
        return EXIT_USAGE
    except LatticeError as exc:
        logger.error(f"failed: {type(exc).__name__}: {exc}")
        return EXIT_FAILED
    except (OSError, ValueError) as exc:
        logger.error(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
