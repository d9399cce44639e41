"""Seeded parameter sweeps over coupled systems, with CSV persistence.

Every (epsilon, length, m, tau, realization) combination gets its own record
seed split off the master seed, so results never depend on execution order or
worker count.  Records are streamed to CSV in task order as they complete;
failed realizations become explicit rows with NaN estimates instead of being
dropped.  Reals are written with 9 significant digits, a precision that
re-emits byte-identically after parsing.
"""

from __future__ import annotations

import csv
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from time import perf_counter

import numpy as np

from .dynsys import SYSTEM_KINDS, SystemSpec, generate_trajectory
from .preprocess import RealSeries, binarize_median, quantize_quantiles
from .ter import global_ter

__all__ = [
    "SweepConfig",
    "SweepRecord",
    "SummaryRow",
    "split_seed",
    "run_sweep",
    "summarize",
    "read_records",
    "write_summary",
    "summary_path",
]


def split_seed(seed: int, *key: int) -> int:
    """Derive an independent child seed from a parent seed and an index path."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SweepConfig:
    """Full description of one sweep experiment."""

    system: str
    epsilon_values: tuple[float, ...]
    lengths: tuple[int, ...]
    m_values: tuple[int, ...]
    tau_values: tuple[int, ...]
    realizations: int
    master_seed: int
    surrogates: int = 30
    binarization: str = "median"
    discard: int | None = None
    output_path: str = "sweep.csv"

    def __post_init__(self):
        if self.system not in SYSTEM_KINDS:
            raise ValueError(f"unknown system kind: {self.system!r}")
        for name in ("epsilon_values", "lengths", "m_values", "tau_values"):
            seq = tuple(getattr(self, name))
            if not seq:
                raise ValueError(f"{name} must be non-empty")
            object.__setattr__(self, name, seq)
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if self.surrogates < 1:
            raise ValueError("surrogates must be >= 1")
        _parse_binarization(self.binarization)


def _parse_binarization(policy: str) -> int | None:
    """Return the quantile alphabet size, or None for median binarization."""
    if policy == "median":
        return None
    if policy.startswith("quantile:"):
        alpha = int(policy.split(":", 1)[1])
        if alpha < 2:
            raise ValueError("quantile alphabet must be >= 2")
        return alpha
    raise ValueError(f"unknown binarization policy: {policy!r}")


@dataclass(frozen=True)
class SweepRecord:
    """One realization's estimates; status is 'ok' or an error description."""

    system: str
    epsilon: float
    length: int
    m: int
    tau: int
    realization: int
    seed: int
    t_yx: float
    t_xy: float
    t_yx_surr: float
    t_xy_surr: float
    t_global: float
    elapsed_ms: float
    status: str


@dataclass(frozen=True)
class SummaryRow:
    """Boxplot statistics of t_global for one parameter combination."""

    epsilon: float
    length: int
    m: int
    tau: int
    count: int
    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float
    n_outliers: int


def _symbolize(values: np.ndarray, policy: str):
    alpha = _parse_binarization(policy)
    series = RealSeries(values)
    if alpha is None:
        return binarize_median(series)
    return quantize_quantiles(series, alpha)


def _run_one(config: SweepConfig, task) -> SweepRecord:
    epsilon, length, m, tau, realization, record_seed = task
    start = perf_counter()
    try:
        spec = SystemSpec(
            kind=config.system,
            epsilon=epsilon,
            length=length,
            seed=split_seed(record_seed, 0),
            discard=config.discard,
        )
        traj = generate_trajectory(spec)
        x = _symbolize(traj.target_series.values, config.binarization)
        y = _symbolize(traj.source_series.values, config.binarization)
        t0 = perf_counter()
        est = global_ter(x, y, m, tau, K=config.surrogates,
                         seed=split_seed(record_seed, 1))
        elapsed_ms = (perf_counter() - t0) * 1e3
        return SweepRecord(
            config.system, epsilon, length, m, tau, realization, record_seed,
            est.t_yx, est.t_xy, est.t_yx_surr, est.t_xy_surr, est.t_global,
            elapsed_ms, "ok",
        )
    except (ValueError, RuntimeError) as exc:
        nan = float("nan")
        elapsed_ms = (perf_counter() - start) * 1e3
        return SweepRecord(
            config.system, epsilon, length, m, tau, realization, record_seed,
            nan, nan, nan, nan, nan, elapsed_ms, f"error: {exc}",
        )


def _tasks(config: SweepConfig):
    for ie, epsilon in enumerate(config.epsilon_values):
        for il, length in enumerate(config.lengths):
            for im, m in enumerate(config.m_values):
                for it, tau in enumerate(config.tau_values):
                    for r in range(config.realizations):
                        seed = split_seed(config.master_seed, ie, il, im, it, r)
                        yield epsilon, length, m, tau, r, seed


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


_RECORD_FIELDS = [f.name for f in fields(SweepRecord)]
_SUMMARY_FIELDS = [f.name for f in fields(SummaryRow)]


def run_sweep(
    config: SweepConfig, workers: int = 1, progress: bool = False
) -> list[SweepRecord]:
    """Run every combination and realization; stream records to CSV.

    Records are written to config.output_path in deterministic task order
    regardless of worker count.  A write failure appends an abort marker
    line ('# aborted: ...') when possible and re-raises.
    """
    tasks = list(_tasks(config))
    records: list[SweepRecord] = []
    out_path = Path(config.output_path)
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        try:
            writer.writerow(_RECORD_FIELDS)
            if workers > 1:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    futures = [pool.submit(_run_one, config, t) for t in tasks]
                    results = (f.result() for f in futures)
                    records = _drain(results, writer, fh, len(tasks), progress)
            else:
                results = (_run_one(config, t) for t in tasks)
                records = _drain(results, writer, fh, len(tasks), progress)
        except Exception as exc:
            try:
                fh.write(f"# aborted: {exc}\n")
            except OSError:
                pass
            raise
    return records


def _drain(results, writer, fh, total, progress) -> list:
    records = []
    for i, rec in enumerate(results):
        writer.writerow(_fmt(getattr(rec, name)) for name in _RECORD_FIELDS)
        fh.flush()
        records.append(rec)
        if progress:
            print(f"[{i + 1}/{total}] {rec.status}", file=sys.stderr, flush=True)
    return records


def read_records(path) -> list[SweepRecord]:
    """Parse a sweep CSV back into records, skipping marker lines."""
    records = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != _RECORD_FIELDS:
            raise ValueError("unrecognized sweep CSV header")
        for row in reader:
            if not row or row[0].startswith("#"):
                continue
            rec = dict(zip(_RECORD_FIELDS, row))
            records.append(SweepRecord(
                system=rec["system"],
                epsilon=float(rec["epsilon"]),
                length=int(rec["length"]),
                m=int(rec["m"]),
                tau=int(rec["tau"]),
                realization=int(rec["realization"]),
                seed=int(rec["seed"]),
                t_yx=float(rec["t_yx"]),
                t_xy=float(rec["t_xy"]),
                t_yx_surr=float(rec["t_yx_surr"]),
                t_xy_surr=float(rec["t_xy_surr"]),
                t_global=float(rec["t_global"]),
                elapsed_ms=float(rec["elapsed_ms"]),
                status=rec["status"],
            ))
    return records


def summarize(records: list[SweepRecord]) -> list[SummaryRow]:
    """Boxplot statistics of t_global per (epsilon, length, m, tau) group.

    Quartiles use linear interpolation of order statistics; whiskers extend
    to the most extreme values within 1.5 IQR of the quartiles; failed
    records count toward nothing but group membership is by ok records only.
    """
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple, list[float]] = {}
    for rec in records:
        key = (rec.epsilon, rec.length, rec.m, rec.tau)
        groups.setdefault(key, [])
        if rec.status == "ok":
            groups[key].append(rec.t_global)
    rows = []
    nan = float("nan")
    for key in sorted(groups):
        vals = np.array(groups[key])
        epsilon, length, m, tau = key
        if vals.size == 0:
            rows.append(SummaryRow(epsilon, length, m, tau, 0,
                                   nan, nan, nan, nan, nan, 0))
            continue
        q1, med, q3 = np.quantile(vals, [0.25, 0.5, 0.75])
        iqr = q3 - q1
        inside = vals[(vals >= q1 - 1.5 * iqr) & (vals <= q3 + 1.5 * iqr)]
        rows.append(SummaryRow(
            epsilon, length, m, tau, int(vals.size),
            float(q1), float(med), float(q3),
            float(inside.min()), float(inside.max()),
            int(vals.size - inside.size),
        ))
    return rows


def write_summary(rows: list[SummaryRow], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_SUMMARY_FIELDS)
        for row in rows:
            writer.writerow(_fmt(getattr(row, name)) for name in _SUMMARY_FIELDS)


def summary_path(records_path) -> Path:
    """Summary CSV path next to the records CSV: <stem>_summary.csv."""
    p = Path(records_path)
    return p.with_name(p.stem + "_summary" + p.suffix)
