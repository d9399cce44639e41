"""Command line front end: lzc, ter, simulate, suggest, sweep."""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .dynsys import SYSTEM_KINDS, SystemSpec, generate_trajectory
from .lz import SymbolSequence, entropy_rate_lz, lz76_word_count
from .preprocess import RealSeries, auto_mutual_information, binarize_median, suggest_lag
from .sweep import (
    SweepConfig,
    run_sweep,
    summarize,
    summary_path,
    write_summary,
)
from .ter import global_ter

__all__ = ["main"]

_CONFIG_DEFAULTS = {
    "surrogates": "30",
    "binarization": "median",
    "discard": "",
    "output_path": "sweep.csv",
}


def _read_column(path: str, column: int) -> np.ndarray:
    """Read one column of a CSV file as floats, skipping a header row."""
    values = []
    first = True
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].startswith("#"):
                continue
            if column >= len(row):
                raise ValueError(f"{path}:{lineno}: no column {column}")
            try:
                value = float(row[column])
            except ValueError:
                if first:
                    first = False
                    continue
                raise ValueError(
                    f"{path}:{lineno}: non-numeric value {row[column]!r}"
                ) from None
            first = False
            values.append(value)
    if not values:
        raise ValueError(f"{path}: no data rows")
    return np.array(values)


def _fmt(x: float) -> str:
    return format(x, ".9g")


def _cmd_lzc(args) -> int:
    values = _read_column(args.input, args.column)
    if not np.all(values == np.floor(values)):
        raise ValueError("column holds non-integer symbols")
    seq = SymbolSequence(values.astype(np.int64), alphabet_size=args.alphabet)
    print(f"C = {lz76_word_count(seq)}")
    print(f"h = {_fmt(entropy_rate_lz(seq))} nats/symbol")
    return 0


def _cmd_ter(args) -> int:
    target = binarize_median(RealSeries(_read_column(args.target, args.column)))
    source = binarize_median(RealSeries(_read_column(args.source, args.column)))
    est = global_ter(target, source, args.m, args.tau, K=args.K, seed=args.seed)
    for name in ("t_yx", "t_xy", "t_yx_surr", "t_xy_surr", "t_global"):
        print(f"{name} = {_fmt(getattr(est, name))}")
    return 0


def _cmd_simulate(args) -> int:
    spec = SystemSpec(
        kind=args.system,
        epsilon=args.epsilon,
        length=args.length,
        seed=args.seed,
        discard=args.discard,
    )
    traj = generate_trajectory(spec)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "source", "target"])
        src = traj.source_series.values
        tgt = traj.target_series.values
        for i in range(len(src)):
            writer.writerow([i, _fmt(src[i]), _fmt(tgt[i])])
    print(f"wrote {len(src)} samples to {args.out}")
    return 0


def _cmd_suggest(args) -> int:
    series = RealSeries(_read_column(args.input, args.column))
    curve = auto_mutual_information(series, args.max_lag, bins=args.bins)
    print("lag,ami_nats")
    for lag, mi in zip(curve.lags, curve.mi_values):
        print(f"{lag},{_fmt(mi)}")
    suggestion = suggest_lag(curve)
    print(f"suggested_tau = {suggestion.lag}")
    if suggestion.no_local_minimum:
        print("note: no strict local minimum up to max lag; "
              "global minimum returned")
    return 0


def _parse_sweep_config(path: str) -> SweepConfig:
    pairs = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            pairs[key.strip()] = value.strip()
    required = ("system", "epsilon_values", "lengths", "m_values",
                "tau_values", "realizations", "master_seed")
    for key in required:
        if key not in pairs:
            raise ValueError(f"{path}: missing required key {key!r}")
    known = set(required) | set(_CONFIG_DEFAULTS)
    unknown = set(pairs) - known
    if unknown:
        raise ValueError(f"{path}: unknown keys {sorted(unknown)}")
    merged = {**_CONFIG_DEFAULTS, **pairs}
    return SweepConfig(
        system=merged["system"],
        epsilon_values=tuple(float(s) for s in merged["epsilon_values"].split(",")),
        lengths=tuple(int(s) for s in merged["lengths"].split(",")),
        m_values=tuple(int(s) for s in merged["m_values"].split(",")),
        tau_values=tuple(int(s) for s in merged["tau_values"].split(",")),
        realizations=int(merged["realizations"]),
        master_seed=int(merged["master_seed"]),
        surrogates=int(merged["surrogates"]),
        binarization=merged["binarization"],
        discard=int(merged["discard"]) if merged["discard"] else None,
        output_path=merged["output_path"],
    )


def _cmd_sweep(args) -> int:
    config = _parse_sweep_config(args.config)
    records = run_sweep(config, workers=args.workers, progress=args.progress)
    rows = summarize(records)
    out = summary_path(config.output_path)
    write_summary(rows, out)
    failed = sum(1 for rec in records if rec.status != "ok")
    print(f"wrote {len(records)} records to {config.output_path}"
          + (f" ({failed} failed)" if failed else ""))
    print(f"wrote {len(rows)} summary rows to {out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lzter",
        description="Transfer entropy rate estimation from symbolic complexity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lzc", help="complexity and entropy rate of one column")
    p.add_argument("--input", required=True)
    p.add_argument("--column", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=2)
    p.set_defaults(func=_cmd_lzc)

    p = sub.add_parser("ter", help="directed transfer entropy rate estimate")
    p.add_argument("--target", required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--column", type=int, required=True)
    p.add_argument("-m", type=int, required=True, dest="m")
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("-K", type=int, default=30, dest="K")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_ter)

    p = sub.add_parser("simulate", help="generate a coupled-system trajectory")
    p.add_argument("--system", required=True, choices=sorted(SYSTEM_KINDS))
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--discard", type=int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("suggest", help="auto mutual information lag scan")
    p.add_argument("--input", required=True)
    p.add_argument("--column", type=int, required=True)
    p.add_argument("--max-lag", type=int, required=True, dest="max_lag")
    p.add_argument("--bins", type=int, default=16)
    p.set_defaults(func=_cmd_suggest)

    p = sub.add_parser("sweep", help="run a parameter sweep from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
