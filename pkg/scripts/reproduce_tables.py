"""Run the ARCH(1) and MAR rejection-rate tables at full scale and save them.

    python scripts/reproduce_tables.py --reps 10000 --workers 4 --outdir results
"""

import argparse
from pathlib import Path

from spwn.experiment import DEFAULT_SEED, stderr_progress, table1, table2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=10_000)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--only", choices=("table1", "table2"))
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, run in (("table1", table1), ("table2", table2)):
        if args.only and name != args.only:
            continue
        report = run(reps=args.reps, n=args.n, seed=args.seed, workers=args.workers,
                     progress=stderr_progress)
        (outdir / f"{name}.csv").write_text(report.to_csv())
        (outdir / f"{name}.json").write_text(report.to_json())
        print(f"{name}: {report.elapsed:.1f}s")
        print(report.to_csv())


if __name__ == "__main__":
    main()
