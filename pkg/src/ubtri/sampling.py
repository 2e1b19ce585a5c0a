"""Vertex- and edge-sampling estimators of balanced/unbalanced triangle counts.

Each estimator draws ``k`` nodes (or edges) uniformly with replacement,
computes the local count of qualifying triangles around each draw, scales it
by ``|V|/3`` (or ``|E|/3``) and keeps a running mean. Both local searches come
in a ``baseline`` flavour that classifies every incident triangle and an
``improved`` flavour that prunes with absolute edge values. The two flavours
count exactly the same triangles, so with the same seed they return
bit-identical estimates.
"""

from __future__ import annotations

import time
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .balance import SLACK, Threshold, _pbal, as_threshold
from .exact import _chunks
from .graph import EdgeRecord, UncertainSignedGraph

MODES = ("vertex", "edge")
VARIANTS = ("baseline", "improved")


def _tally(pb: float, t: float, lower: float, counts: list[int]) -> None:
    if pb >= t:
        counts[0] += 1
    elif pb < lower:
        counts[1] += 1


# -- local searches -----------------------------------------------------------


def vertex_local_count(
    g: UncertainSignedGraph, th: Threshold | float, q: int, variant: str = "improved"
) -> tuple[int, int]:
    """Balanced and unbalanced triangles containing node ``q``."""
    th = as_threshold(th)
    if variant == "baseline":
        return _vertex_baseline(g, th, q)
    if variant == "improved":
        return _vertex_improved(g, th, q)
    raise ValueError(f"unknown variant {variant!r}")


def _vertex_baseline(g, th, q):
    t, lower = th.t, th.lower
    nb, eq = g._nbrs[q], g._eids[q]
    P, index, n = g.edge_p, g._index, g.node_count
    counts = [0, 0]
    d = len(nb)
    for x in range(d):
        u, pu = nb[x], P[eq[x]]
        for y in range(x + 1, d):
            v = nb[y]
            j = index.get(u * n + v if u < v else v * n + u)
            if j is not None:
                _tally(_pbal(pu, P[eq[y]], P[j]), t, lower, counts)
    return counts[0], counts[1]


def _vertex_improved(g, th, q):
    t, lower, a_t = th.t, th.lower, th.a_t
    nb, eq, neg = g._nbrs[q], g._eids[q], g._neg_a[q]
    P, A, index, n = g.edge_p, g.edge_a, g._index, g.node_count
    counts = [0, 0]
    floor = a_t - SLACK
    # adjacency is sorted by descending absolute value: stop at the first
    # q-edge that cannot be part of any qualifying triangle
    live = bisect_right(neg, -floor)
    for x in range(live):
        u, eu = nb[x], eq[x]
        # the second q-edge comes later in q's list, so its absolute value is
        # at most A[eu]; with the third edge unconstrained it still needs
        # a >= a_t / (2 A[eu])
        if a_t <= SLACK:
            need = floor
        elif A[eu] == 0.0:
            break
        else:
            need = max(floor, a_t / (2.0 * A[eu]) - SLACK)
        if need > 0.5:
            # later q-edges only make the bound larger
            break
        hi = bisect_right(neg, -need)
        pu = P[eu]
        for y in range(x + 1, hi):
            v = nb[y]
            j = index.get(u * n + v if u < v else v * n + u)
            if j is not None and A[j] >= floor:
                _tally(_pbal(pu, P[eq[y]], P[j]), t, lower, counts)
    return counts[0], counts[1]


def edge_local_count(
    g: UncertainSignedGraph,
    th: Threshold | float,
    e: int | EdgeRecord,
    variant: str = "improved",
) -> tuple[int, int]:
    """Balanced and unbalanced triangles containing edge ``e`` (edge id or record)."""
    th = as_threshold(th)
    i = e if isinstance(e, (int, np.integer)) else g.edge_id(e.u, e.v)
    if i is None or not 0 <= i < g.edge_count:
        raise ValueError(f"edge {e!r} is not in the graph")
    if variant == "baseline":
        return _edge_baseline(g, th, int(i))
    if variant == "improved":
        return _edge_improved(g, th, int(i))
    raise ValueError(f"unknown variant {variant!r}")


def _edge_baseline(g, th, i):
    u, v = g.edge_u[i], g.edge_v[i]
    P, index, n = g.edge_p, g._index, g.node_count
    pe = P[i]
    counts = [0, 0]
    for w in g._nbr_sets[u] & g._nbr_sets[v]:
        _tally(
            _pbal(pe, P[index[u * n + w if u < w else w * n + u]], P[index[v * n + w if v < w else w * n + v]]),
            th.t, th.lower, counts,
        )
    return counts[0], counts[1]


def _edge_improved(g, th, i):
    floor = th.a_t - SLACK
    if g.edge_a[i] < floor:
        return 0, 0
    u, v = g.edge_u[i], g.edge_v[i]
    # neighbour lists are sorted by descending absolute value, so an endpoint
    # with no edge at or above the floor (other than e itself) closes the search
    cut = -floor
    if bisect_right(g._neg_a[u], cut) < 2 or bisect_right(g._neg_a[v], cut) < 2:
        return 0, 0
    P, A, index, n = g.edge_p, g.edge_a, g._index, g.node_count
    pe = P[i]
    t, lower = th.t, th.lower
    counts = [0, 0]
    for w in g._nbr_sets[u] & g._nbr_sets[v]:
        j = index[u * n + w if u < w else w * n + u]
        if A[j] < floor:
            continue
        k = index[v * n + w if v < w else w * n + v]
        if A[k] < floor:
            continue
        _tally(_pbal(pe, P[j], P[k]), t, lower, counts)
    return counts[0], counts[1]


# -- estimators ---------------------------------------------------------------


@dataclass
class SampleReport:
    """Result of one sampling run.

    ``history`` maps sample counts to the running estimates at that point, for
    every requested checkpoint not exceeding ``k``.
    """

    mode: str
    variant: str
    k: int
    seed: int
    t: float
    est_balanced: float
    est_unbalanced: float
    elapsed_ms: float
    qps: float
    history: dict[int, tuple[float, float]] = field(default_factory=dict)
    truth: dict | None = None
    mape_balanced: float | None = None
    mape_unbalanced: float | None = None

    def with_truth(self, balanced: int, unbalanced: int) -> SampleReport:
        self.truth = {"balanced": balanced, "unbalanced": unbalanced}
        self.mape_balanced = mape([self.est_balanced], balanced) if balanced > 0 else None
        self.mape_unbalanced = mape([self.est_unbalanced], unbalanced) if unbalanced > 0 else None
        return self

    def as_dict(self) -> dict:
        out = asdict(self)
        out.pop("history")
        if self.history:
            out["history"] = [
                {"samples": s, "est_balanced": b, "est_unbalanced": u} for s, (b, u) in sorted(self.history.items())
            ]
        for key in ("truth", "mape_balanced", "mape_unbalanced"):
            if out[key] is None:
                del out[key]
        return out


def draw_indices(population: int, k: int, seed: int) -> np.ndarray:
    """``k`` uniform draws with replacement from ``range(population)``.

    All draws come from one PCG64 stream seeded with ``seed``; draw ``i`` is the
    ``i``-th value of that stream, so it does not depend on how the samples
    are later split across workers.
    """
    return np.random.Generator(np.random.PCG64(seed)).integers(0, population, size=k)


def _estimate(g, th, k, seed, mode, variant, threads, checkpoints):
    if k < 1:
        raise ValueError(f"number of samples must be >= 1, got {k!r}")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    th = as_threshold(th)
    if mode == "vertex":
        population = g.node_count
        local = _vertex_baseline if variant == "baseline" else _vertex_improved
    else:
        population = g.edge_count
        local = _edge_baseline if variant == "baseline" else _edge_improved
    if population == 0:
        raise ValueError(f"cannot {mode}-sample a graph with no {'nodes' if mode == 'vertex' else 'edges'}")
    scale = population / 3.0

    start = time.perf_counter()
    picks = draw_indices(population, k, seed).tolist()

    def run(lo, hi):
        return [local(g, th, s) for s in picks[lo:hi]]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: run(*r), _chunks(k, threads)))
        locals_ = [c for part in parts for c in part]
    else:
        locals_ = run(0, k)

    # running mean folded in sample order, as in the incremental update
    marks = set(checkpoints or ())
    history = {}
    est_b = est_u = 0.0
    for i, (b, u) in enumerate(locals_):
        est_b = (i * est_b + b * scale) / (i + 1)
        est_u = (i * est_u + u * scale) / (i + 1)
        if i + 1 in marks:
            history[i + 1] = (est_b, est_u)
    elapsed = time.perf_counter() - start
    return SampleReport(
        mode=mode,
        variant=variant,
        k=k,
        seed=seed,
        t=th.t,
        est_balanced=est_b,
        est_unbalanced=est_u,
        elapsed_ms=elapsed * 1e3,
        qps=k / elapsed if elapsed > 0 else float("inf"),
        history=history,
    )


def vertex_estimate(
    g: UncertainSignedGraph,
    th: Threshold | float,
    k: int,
    seed: int = 0,
    variant: str = "improved",
    threads: int = 1,
    checkpoints: Sequence[int] | None = None,
) -> SampleReport:
    """Estimate the counts from ``k`` uniformly sampled nodes.

    Each sample contributes ``local * |V| / 3``; the estimate is their mean and
    is unbiased for the exact count.
    """
    return _estimate(g, th, k, seed, "vertex", variant, threads, checkpoints)


def edge_estimate(
    g: UncertainSignedGraph,
    th: Threshold | float,
    k: int,
    seed: int = 0,
    variant: str = "improved",
    threads: int = 1,
    checkpoints: Sequence[int] | None = None,
) -> SampleReport:
    """Estimate the counts from ``k`` uniformly sampled edges (scale ``|E| / 3``)."""
    return _estimate(g, th, k, seed, "edge", variant, threads, checkpoints)


def estimate(g, th, k, seed=0, mode="edge", variant="improved", threads=1, checkpoints=None) -> SampleReport:
    if mode not in MODES:
        raise ValueError(f"unknown sampling mode {mode!r}")
    return _estimate(g, th, k, seed, mode, variant, threads, checkpoints)


def mape(estimates: Sequence[float], truth: float) -> float:
    """Mean absolute percentage error of ``estimates`` against ``truth``."""
    if truth == 0:
        raise ValueError("MAPE is undefined for a true count of zero")
    est = np.asarray(estimates, dtype=float)
    if est.size == 0:
        raise ValueError("need at least one estimate")
    return float(np.mean(np.abs(est - truth)) / abs(truth) * 100.0)
