"""Command-line interface.

Subcommands:
    gen     draw random instances and write their documents
    solve   run the dual-decomposition solver on an instance file
    oracle  run the LP or brute-force reference solver on an instance file
    bench   run a benchmark suite (table1 or feas30)

Exit codes: 0 success/converged, 1 usage or I/O error, 2 solver did not
converge, 3 oracle reports an infeasible instance. All commands are
deterministic under fixed flags and seeds.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bench as bench_mod
from .dual import DualConfig, solve, trace_csv
from .errors import CvqeError
from .generate import gen_instance, generation_meta
from .oracles import brute_force_solve, lp_solve
from .problems import parse_instance, serialize_instance
from .reports import brute_report_doc, dumps, lp_report_doc, solve_report_doc
from .vqe import VqeSettings

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2
EXIT_INFEASIBLE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; this CLI reserves 2
    # for non-convergence, so remap usage problems to exit code 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cvqe", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate random instances", parser_class=_Parser)
    gen.add_argument("-n", "--qubits", type=int, required=True, help="bit count")
    gen.add_argument("-m", "--constraints", type=int, default=0, help="constraint count")
    gen.add_argument("--seed", type=int, default=0, help="base seed; instance i uses seed+i")
    gen.add_argument("--count", type=int, default=1, help="number of instances")
    gen.add_argument("--ensure-active", action="store_true", help="require an LP-active constraint")
    gen.add_argument("--out", default=".", help="output directory")

    slv = sub.add_parser("solve", help="solve an instance with the variational dual loop", parser_class=_Parser)
    slv.add_argument("instance", help="instance document path")
    slv.add_argument("--seed", type=int, default=0)
    slv.add_argument("--mu0", type=float, default=1.0, help="dual step size numerator")
    slv.add_argument("--alpha", type=float, default=1.0, help="dual step size offset")
    slv.add_argument("--tol", type=float, default=1e-5, help="stop when ||lambda_t - lambda_{t-1}|| <= tol")
    slv.add_argument("--max-outer", type=int, default=500, help="outer iteration cap")
    slv.add_argument("--shots", type=int, default=0, help="samples per expectation; 0 = exact")
    slv.add_argument("--restarts", type=int, default=4, help="inner solver restarts")
    slv.add_argument("--max-iterations", type=int, default=1000, help="inner solver iteration cap")
    slv.add_argument("--out", default=".", help="output directory")

    orc = sub.add_parser("oracle", help="run an exact reference solver", parser_class=_Parser)
    orc.add_argument("instance", help="instance document path")
    orc.add_argument("--mode", choices=("lp", "brute"), required=True)
    orc.add_argument("--out", default=".", help="output directory")

    bch = sub.add_parser("bench", help="run a benchmark suite", parser_class=_Parser)
    bch.add_argument("--suite", choices=sorted(bench_mod.SUITE_SHAPES), required=True)
    bch.add_argument("--seed", type=int, default=0)
    bch.add_argument("--mu0", type=float, default=1.0)
    bch.add_argument("--alpha", type=float, default=1.0)
    bch.add_argument("--tol", type=float, default=1e-5)
    bch.add_argument("--max-outer", type=int, default=500)
    bch.add_argument("--shots", type=int, default=0)
    bch.add_argument("--restarts", type=int, default=4)
    bch.add_argument("--max-iterations", type=int, default=1000)
    bch.add_argument("--out", default=".", help="output directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {"gen": _cmd_gen, "solve": _cmd_solve, "oracle": _cmd_oracle, "bench": _cmd_bench}
        return handler[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    except (CvqeError, OSError) as exc:
        print(f"cvqe: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entrypoint() -> None:
    sys.exit(main())


def _cmd_gen(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    for i in range(args.count):
        seed = args.seed + i
        inst = gen_instance(args.qubits, args.constraints, seed, ensure_active=args.ensure_active)
        path = os.path.join(args.out, f"instance-n{args.qubits}-m{args.constraints}-seed{seed}.json")
        with open(path, "w") as handle:
            handle.write(serialize_instance(inst, generation_meta(seed)))
        print(path)
    return EXIT_OK


def _cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    settings = VqeSettings(max_iterations=args.max_iterations, restarts=args.restarts, shots=args.shots)
    dual_cfg = DualConfig(
        mu0=args.mu0, alpha=args.alpha, tol=args.tol, max_outer=args.max_outer, shots=args.shots
    )
    report = solve(inst, settings, dual_cfg, seed=args.seed)
    os.makedirs(args.out, exist_ok=True)
    stem = _stem(args.instance)
    report_path = os.path.join(args.out, f"{stem}.report.json")
    trace_path = os.path.join(args.out, f"{stem}.trace.csv")
    with open(report_path, "w") as handle:
        handle.write(dumps(solve_report_doc(report, inst.n)))
    with open(trace_path, "w") as handle:
        handle.write(trace_csv(report))
    status = "converged" if report.converged else "not converged"
    print(
        f"{status} after {report.outer_iterations} outer iterations: "
        f"objective {report.objective:.6g} -> {report_path}"
    )
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def _cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    os.makedirs(args.out, exist_ok=True)
    stem = _stem(args.instance)
    path = os.path.join(args.out, f"{stem}.{args.mode}.json")
    if args.mode == "lp":
        solution = lp_solve(inst)
        doc = lp_report_doc(solution, inst)
        feasible = solution.optimal
    else:
        solution = brute_force_solve(inst)
        doc = brute_report_doc(solution, inst)
        feasible = solution.best is not None
    with open(path, "w") as handle:
        handle.write(dumps(doc))
    print(f"{doc['status']}: objective {doc['objective']} -> {path}")
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def _cmd_bench(args) -> int:
    spec = bench_mod.BenchSuiteSpec(
        suite=args.suite,
        seed=args.seed,
        mu0=args.mu0,
        alpha=args.alpha,
        tol=args.tol,
        max_outer=args.max_outer,
        shots=args.shots,
        restarts=args.restarts,
        max_iterations=args.max_iterations,
    )
    os.makedirs(args.out, exist_ok=True)
    bench = bench_mod.run_suite(spec, progress=_progress_printer(spec))
    bench_mod.write_outputs(bench, args.out)
    print(bench_mod.summary_markdown(bench))
    return EXIT_OK


def _progress_printer(spec):
    total = bench_mod.SUITE_SHAPES[spec.suite][2]

    def progress(run):
        print(
            f"[{run.index + 1}/{total}] seed {run.seed}: objective {run.report.objective:.6g}, "
            f"converged={run.report.converged}",
            file=sys.stderr,
        )

    return progress


def _load_instance(path: str):
    with open(path) as handle:
        return parse_instance(handle.read())


def _stem(path: str) -> str:
    base = os.path.basename(path)
    return base[:-5] if base.endswith(".json") else base
