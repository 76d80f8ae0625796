"""Full-scale comparison of the three strategies on TNK and WB.

Runs N=100, G=1000 over 20 seeds split from one master seed, writes the
per-run CSVs under ``--out`` and prints the ordering and variance checks.
The checks are reported, never enforced: a failed ordering only prints FLAG.

    python3 scripts/reproduce_ordering.py --jobs 4 --out results/ordering
"""

from __future__ import annotations

import argparse
import json
import os
import time
from pathlib import Path

from cmoead.core import Algorithm, RunConfig
from cmoead.harness import compare, derive_seeds
from cmoead.problems import get_problem

LM, PLAIN = Algorithm.CMOEAD_DMA_LM, Algorithm.CMOEAD


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problems", nargs="+", default=["tnk", "wb"])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--master-seed", type=int, default=0)
    ap.add_argument("--generations", type=int, default=1000)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", type=Path, default=Path("results/ordering"))
    args = ap.parse_args(argv)

    seeds = derive_seeds(args.master_seed, args.seeds)
    config = RunConfig(population=100, generations=args.generations)
    summary = {}
    start = time.perf_counter()
    for name in args.problems:
        t0 = time.perf_counter()
        cmp = compare(get_problem(name), config, seeds, args.out / name, args.jobs)
        p = cmp.wilcoxon_greater(LM, PLAIN)
        row = {
            "mean": {a.value: cmp.final_mean(a) for a in Algorithm},
            "std": {a.value: cmp.final_std(a) for a in Algorithm},
            "wilcoxon_p": p,
            "ordering_holds": cmp.final_mean(LM) >= cmp.final_mean(PLAIN) and p < 0.1,
            "std_holds": cmp.final_std(LM) <= cmp.final_std(PLAIN),
            "seconds": time.perf_counter() - t0,
        }
        summary[name] = row
        print(f"== {name} ({row['seconds']:.0f} s)")
        print(cmp.table())
        print(f"ordering {'ok' if row['ordering_holds'] else 'FLAG'}; std {'ok' if row['std_holds'] else 'FLAG'}")
    total = time.perf_counter() - start
    print(f"total {total:.0f} s")
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "summary.json").write_text(json.dumps({"seeds": seeds, "total_seconds": total, **summary}, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
