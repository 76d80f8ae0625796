"""Command-line entry point: ``cmoead {run,compare,problems,validate}``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from . import oracles
from .core import Algorithm, CmoeadError, RunConfig
from .external import external_problem
from .harness import compare, derive_seeds, run_experiment
from .problems import PROBLEMS, get_problem


def _add_run_flags(p: argparse.ArgumentParser, with_algorithm: bool) -> None:
    p.add_argument("--problem", choices=sorted(PROBLEMS), help="built-in problem (or use --external-spec)")
    p.add_argument("--external-spec", help="problem spec file for an external evaluator")
    if with_algorithm:
        p.add_argument("--algorithm", default=Algorithm.CMOEAD_DMA_LM.value, choices=[a.value for a in Algorithm])
    p.add_argument("--population", type=int, default=100)
    p.add_argument("--generations", type=int, default=1000)
    p.add_argument("--neighborhood", type=int, default=20, help="neighbourhood size T")
    p.add_argument("--r", type=float, default=0.5, dest="dm_rate", help="directed-mating probability")
    p.add_argument("--alpha", type=int, default=10, help="infeasible archive capacity per subproblem")
    p.add_argument("--pc", type=float, default=0.9, help="SBX crossover rate")
    p.add_argument("--eta-c", type=float, default=20.0)
    p.add_argument("--pm", type=float, default=None, help="mutation rate (default 1/n)")
    p.add_argument("--eta-m", type=float, default=20.0)
    p.add_argument("--dm-pool", default="archive+neighborhood", choices=["archive+neighborhood", "archive"])
    p.add_argument("--hybrid-mode", default="bernoulli", choices=["bernoulli", "partition"])
    seeds = p.add_mutually_exclusive_group()
    seeds.add_argument("--seeds", type=int, default=20, help="number of seeds derived from --master-seed")
    seeds.add_argument("--seed-list", type=lambda s: [int(v) for v in s.split(",")], help="comma-separated seeds")
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", default="results", help="output directory for CSV files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmoead", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run_flags(sub.add_parser("run", help="one algorithm on one problem over several seeds"), True)
    _add_run_flags(sub.add_parser("compare", help="all three algorithms over a shared seed list"), False)
    sub.add_parser("problems", help="list the built-in problem catalogue")
    v = sub.add_parser("validate", help="run the oracle checks")
    v.add_argument("--quick", action="store_true", help="reduced sample sizes")
    return parser


def _problem(args, parser):
    if args.external_spec:
        return external_problem(args.external_spec)
    if not args.problem:
        parser.error("one of --problem or --external-spec is required")
    return get_problem(args.problem)


def _config(args) -> RunConfig:
    return RunConfig(
        algorithm=getattr(args, "algorithm", Algorithm.CMOEAD_DMA_LM.value),
        population=args.population,
        generations=args.generations,
        neighborhood=args.neighborhood,
        dm_rate=args.dm_rate,
        archive_capacity=args.alpha,
        sbx_rate=args.pc,
        sbx_eta=args.eta_c,
        mutation_rate=args.pm,
        mutation_eta=args.eta_m,
        dm_pool=args.dm_pool,
        hybrid_mode=args.hybrid_mode,
    )


def _seeds(args):
    return args.seed_list if args.seed_list else derive_seeds(args.master_seed, args.seeds)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    if args.command == "problems":
        for name, factory in PROBLEMS.items():
            p = factory()
            ref = ", ".join(repr(float(v)) for v in p.hv_reference)
            print(f"{name:<8} n={p.n:<3} m={p.m} p={p.p}  hv_reference=({ref})  {p.description}")
        return 0

    if args.command == "validate":
        results = oracles.run_all(quick=args.quick)
        for r in results:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
        return 0 if all(r.passed for r in results) else 1

    try:
        problem = _problem(args, parser)
        config = _config(args)
        seeds = _seeds(args)
        if args.command == "run":
            report = run_experiment(problem, config, seeds, args.out, n_jobs=args.jobs)
            final = report.final()
            if len(final):
                std = report.cumulative.std[-1] if report.cumulative is not None and len(report.cumulative.std) else 0.0
                print(f"{problem.name} {config.algorithm.value}: {len(final)} runs, mean final HV {final.mean():.6g}, std {std:.6g}")
            if report.single_run_warning:
                print("warning: a single successful run; std reported as 0", file=sys.stderr)
            if report.failures:
                print(f"{len(report.failures)} of {len(seeds)} runs failed; see {args.out}", file=sys.stderr)
                return 1
            return 0
        result = compare(problem, replace(config), seeds, args.out, n_jobs=args.jobs)
        print(result.table())
        return 1 if any(rep.failures for rep in result.reports.values()) else 0
    except CmoeadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
