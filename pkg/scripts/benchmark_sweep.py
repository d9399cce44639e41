#!/usr/bin/env python3
"""Run the three benchmark-system sweeps and print their summaries.

Presets mirror the experiments the package is built around: a coupling scan
of the map pair at length 10^4 and of the two flow pairs at the lengths
their artifacts are known to show up at.  Realization counts scale with
--realizations so a smoke run stays cheap.

    python3 scripts/benchmark_sweep.py --system henon-henon --realizations 10
    python3 scripts/benchmark_sweep.py --system all --out-dir results/
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lzter import SweepConfig, run_sweep, summarize, summary_path, write_summary

PRESETS = {
    "henon-henon": dict(
        epsilon_values=tuple(round(0.1 * k, 1) for k in range(11)),
        lengths=(10000,),
        m_values=(5,),
        tau_values=(1,),
    ),
    "lorenz-lorenz": dict(
        epsilon_values=(0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0),
        lengths=(10000,),
        m_values=(3,),
        tau_values=(10,),
    ),
    "rossler-lorenz": dict(
        epsilon_values=(0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0),
        lengths=(3000,),
        m_values=(7,),
        tau_values=(10,),
    ),
}


def run_one(system: str, args) -> None:
    out = Path(args.out_dir) / f"{system}.csv"
    config = SweepConfig(
        system=system,
        realizations=args.realizations,
        master_seed=args.seed,
        surrogates=args.surrogates,
        output_path=str(out),
        **PRESETS[system],
    )
    n_tasks = (
        len(config.epsilon_values) * len(config.lengths)
        * len(config.m_values) * len(config.tau_values) * config.realizations
    )
    print(f"== {system}: {n_tasks} realizations -> {out}")
    start = time.perf_counter()
    records = run_sweep(config, workers=args.workers, progress=args.progress)
    elapsed = time.perf_counter() - start
    rows = summarize(records)
    write_summary(rows, summary_path(out))
    failed = sum(1 for r in records if r.status != "ok")
    print(f"   {elapsed:.1f} s total, {failed} failed realizations")
    print(f"   {'eps':>5} {'median':>9} {'q1':>9} {'q3':>9} {'outliers':>8}")
    for row in rows:
        print(f"   {row.epsilon:5.2f} {row.median:9.4f} {row.q1:9.4f} "
              f"{row.q3:9.4f} {row.n_outliers:8d}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--system", default="all",
                        choices=[*PRESETS, "all"])
    parser.add_argument("--realizations", type=int, default=10)
    parser.add_argument("--surrogates", type=int, default=30)
    parser.add_argument("--seed", type=int, default=20240801)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--progress", action="store_true")
    args = parser.parse_args()

    Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    systems = list(PRESETS) if args.system == "all" else [args.system]
    for system in systems:
        run_one(system, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
