"""Timing, throughput and accuracy measurements for the exact and sampling
algorithms, emitted as flat :class:`BenchmarkRecord` rows."""

from __future__ import annotations

import csv
import gc
import statistics
import time
from dataclasses import asdict, dataclass, fields
from typing import IO, Iterable, Sequence

import numpy as np

from .balance import ClassCounts, Threshold
from .exact import count_baseline, count_improved
from .graph import UncertainSignedGraph
from .sampling import MODES, VARIANTS, estimate

DEFAULT_SWEEP = tuple(round(0.5 + 0.05 * i, 2) for i in range(10))
DEFAULT_CHECKPOINTS = (100, 1000, 10000)
ALGORITHMS = {"baseline": count_baseline, "improved": count_improved}


@dataclass
class BenchmarkRecord:
    dataset: str
    algorithm: str
    t: float
    elapsed_ms: float
    k: int | None = None
    qps: float | None = None
    balanced: float | None = None
    unbalanced: float | None = None
    ratio: float | None = None
    mape_balanced: float | None = None
    mape_unbalanced: float | None = None
    seed: int | None = None
    repeat: int = 1
    runs: int | None = None


CSV_FIELDS = tuple(f.name for f in fields(BenchmarkRecord))


def write_csv(records: Iterable[BenchmarkRecord], out: IO[str]) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: ("" if v is None else v) for k, v in asdict(rec).items()})


def time_exact(
    g: UncertainSignedGraph, t: float, algorithm: str = "improved", repeat: int = 3, threads: int = 1
) -> tuple[float, ClassCounts]:
    """Median wall time in milliseconds over ``repeat`` runs, plus the counts.

    As with :mod:`timeit`, the cyclic garbage collector is paused while
    timing so its passes over a large graph do not land in one run.
    """
    run = ALGORITHMS[algorithm]
    th = Threshold(t)
    times = []
    enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(max(1, repeat)):
            start = time.perf_counter()
            counts = run(g, th, None, threads)
            times.append((time.perf_counter() - start) * 1e3)
    finally:
        if enabled:
            gc.enable()
    return statistics.median(times), counts


def exact_sweep(
    g: UncertainSignedGraph,
    dataset: str = "graph",
    sweep: Sequence[float] = DEFAULT_SWEEP,
    repeat: int = 3,
    threads: int = 1,
) -> list[BenchmarkRecord]:
    """Baseline and improved rows for every ``t``; the improved row's
    ``ratio`` is its runtime divided by the baseline's."""
    rows = []
    for t in sweep:
        base_ms, base = time_exact(g, t, "baseline", repeat, threads)
        impr_ms, impr = time_exact(g, t, "improved", repeat, threads)
        rows.append(BenchmarkRecord(dataset, "baseline", t, base_ms, balanced=base.balanced,
                                    unbalanced=base.unbalanced, ratio=1.0, repeat=repeat))
        rows.append(BenchmarkRecord(dataset, "improved", t, impr_ms, balanced=impr.balanced,
                                    unbalanced=impr.unbalanced,
                                    ratio=impr_ms / base_ms if base_ms > 0 else None, repeat=repeat))
    return rows


@dataclass
class MapeCurve:
    """Absolute percentage errors per run at each checkpoint.

    ``errors[c]`` has shape ``(runs, 2)``; columns are balanced, unbalanced.
    A column is NaN when the true count of that class is zero.
    """

    mode: str
    variant: str
    errors: dict[int, np.ndarray]
    qps: float
    elapsed_ms: float

    def mape(self, checkpoint: int) -> tuple[float, float]:
        e = self.errors[checkpoint]
        return float(np.mean(e[:, 0])), float(np.mean(e[:, 1]))


def mape_curve(
    g: UncertainSignedGraph,
    t: float,
    mode: str,
    variant: str,
    truth: tuple[int, int],
    checkpoints: Sequence[int] = DEFAULT_CHECKPOINTS,
    runs: int = 100,
    seed: int = 0,
) -> MapeCurve:
    """Run ``runs`` independent estimators (seeds ``seed .. seed+runs-1``) up to
    the largest checkpoint and record each run's error at every checkpoint."""
    checkpoints = sorted(set(checkpoints))
    k = checkpoints[-1]
    errs = {c: np.empty((runs, 2)) for c in checkpoints}
    elapsed = 0.0
    for r in range(runs):
        rep = estimate(g, t, k, seed + r, mode, variant, checkpoints=checkpoints)
        elapsed += rep.elapsed_ms
        for c in checkpoints:
            b, u = rep.history[c]
            errs[c][r] = (
                abs(b - truth[0]) / truth[0] * 100 if truth[0] else np.nan,
                abs(u - truth[1]) / truth[1] * 100 if truth[1] else np.nan,
            )
    qps = runs * k / (elapsed / 1e3) if elapsed > 0 else float("inf")
    return MapeCurve(mode, variant, errs, qps, elapsed)


def sampling_rows(
    g: UncertainSignedGraph,
    t: float,
    dataset: str = "graph",
    samples: int = 10000,
    seed: int = 0,
    modes: Sequence[str] = MODES,
    variants: Sequence[str] = VARIANTS,
    truth: tuple[int, int] | None = None,
    checkpoints: Sequence[int] = DEFAULT_CHECKPOINTS,
    runs: int = 1,
    threads: int = 1,
) -> list[BenchmarkRecord]:
    """Throughput rows for every (mode, variant); with ``truth`` also one MAPE
    row per checkpoint, averaged over ``runs`` runs."""
    rows = []
    for mode in modes:
        for variant in variants:
            name = f"{mode}-{variant}"
            rep = estimate(g, t, samples, seed, mode, variant, threads)
            rows.append(BenchmarkRecord(dataset, name, t, rep.elapsed_ms, k=samples, qps=rep.qps,
                                        balanced=rep.est_balanced, unbalanced=rep.est_unbalanced, seed=seed))
            if truth is None:
                continue
            curve = mape_curve(g, t, mode, variant, truth, checkpoints, runs, seed)
            for c in sorted(curve.errors):
                mb, mu = curve.mape(c)
                rows.append(BenchmarkRecord(
                    dataset, name, t, elapsed_ms=curve.elapsed_ms, k=c, qps=curve.qps,
                    mape_balanced=None if np.isnan(mb) else mb,
                    mape_unbalanced=None if np.isnan(mu) else mu,
                    seed=seed, runs=runs,
                ))
    return rows
