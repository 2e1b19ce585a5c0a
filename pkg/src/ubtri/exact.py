"""Exact counting and enumeration of uncertain balanced/unbalanced triangles.

``count_baseline`` is forward edge iteration under Node Order and classifies
every triangle. ``count_improved`` walks edges in Absolute Edge Order, stops at
the first edge too close to a coin flip to take part in any qualifying
triangle, and restricts each intersection to neighbours whose edges are both
later in the order and above the per-edge cutoff. ``top_k`` reuses the
improved search with a threshold that rises as the result set fills up.
"""

from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, NamedTuple

import numpy as np

from .balance import SLACK, ClassCounts, Threshold, TriangleClass, _pbal, as_threshold
from .graph import UncertainSignedGraph


class TriangleResult(NamedTuple):
    u: int
    v: int
    w: int
    p_bal: float
    cls: TriangleClass

    @property
    def nodes(self) -> tuple[int, int, int]:
        return (self.u, self.v, self.w)


Sink = Callable[[TriangleResult], None]


def _result(a: int, b: int, c: int, p: float, cls: TriangleClass) -> TriangleResult:
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
        if a > b:
            a, b = b, a
    return TriangleResult(a, b, c, p, cls)


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n)) if n else 1
    step, extra = divmod(n, parts)
    out, lo = [], 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _run_chunks(work, ranges, threads: int, sink: Sink | None, reverse: bool = False) -> ClassCounts:
    # each chunk buffers its own emissions; replaying them in chunk order
    # (reversed for walks that run backwards) keeps enumeration output
    # independent of the worker count
    collect = sink is not None
    if threads <= 1 or len(ranges) == 1:
        results = [work(lo, hi, collect) for lo, hi in ranges]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda r: work(r[0], r[1], collect), ranges))
    if reverse:
        results.reverse()
    total = None
    for counts, found in results:
        total = counts if total is None else total.merge(counts)
        if collect:
            for tri in found:
                sink(tri)
    return total


# -- baseline ---------------------------------------------------------------


def count_baseline(
    g: UncertainSignedGraph,
    th: Threshold | float,
    sink: Sink | None = None,
    threads: int = 1,
) -> ClassCounts:
    """Count (and optionally enumerate) triangles by forward edge iteration.

    Every triangle is visited once, so the returned counts include
    ``unclassified`` and ``total``. ``sink`` receives each balanced or
    unbalanced triangle.
    """
    th = as_threshold(th)
    order = g.node_order
    t, lower = th.t, th.lower
    fwd, index, P, n = g._fwd, g._index, g.edge_p, g.node_count
    BAL, UNB = TriangleClass.BALANCED, TriangleClass.UNBALANCED

    def work(lo, hi, collect):
        nb = nu = nc = 0
        found = []
        for u in order[lo:hi]:
            fu = fwd[u]
            for v in fu:
                common = fu & fwd[v]
                if not common:
                    continue
                puv = P[index[u * n + v] if u < v else index[v * n + u]]
                for w in common:
                    puw = P[index[u * n + w] if u < w else index[w * n + u]]
                    pvw = P[index[v * n + w] if v < w else index[w * n + v]]
                    pb = _pbal(puv, puw, pvw)
                    if pb >= t:
                        nb += 1
                        if collect:
                            found.append(_result(u, v, w, pb, BAL))
                    elif pb < lower:
                        nu += 1
                        if collect:
                            found.append(_result(u, v, w, pb, UNB))
                    else:
                        nc += 1
        return ClassCounts(nb, nu, nc, nb + nu + nc), found

    return _run_chunks(work, _chunks(len(order), threads), threads, sink)


# -- improved ---------------------------------------------------------------


def _cutoff_index(g: UncertainSignedGraph, a_t: float) -> int:
    """Number of leading edges (in Absolute Edge Order) that survive the
    coin-flip exclusion at absolute cutoff ``a_t``."""
    return bisect_right(g._neg_edge_a, -(a_t - SLACK))


def _edge_bound(a: float, a_t: float) -> float:
    # minimum absolute value of the two later edges of a qualifying triangle
    # whose earliest edge has absolute value ``a``
    if a_t <= SLACK:
        return 0.0
    if a == 0.0:
        return float("inf")
    return a_t / (4.0 * a * a)


def count_improved(
    g: UncertainSignedGraph,
    th: Threshold | float,
    sink: Sink | None = None,
    threads: int = 1,
) -> ClassCounts:
    """Count (and optionally enumerate) balanced and unbalanced triangles with
    Absolute-Edge-Order pruning.

    Only edges that survive the coin-flip exclusion are visited. Each triangle
    is found at its earliest edge ``i``: the candidate third nodes are the
    common neighbours of ``i``'s endpoints over later edges ``j > i`` with
    ``a_j >= bound(a_i)``. That bound shrinks as ``a_i`` grows, so walking the
    surviving edges backwards only ever widens the window of admissible edge
    ids; it is kept as insert-only neighbour sets and each intersection is a
    hash-set intersection over the smaller side.

    Balanced and unbalanced counts match :func:`count_baseline`. Unclassified
    triangles are never visited, so ``unclassified`` and ``total`` are
    ``None``.
    """
    th = as_threshold(th)
    t, lower, a_t = th.t, th.lower, th.a_t
    U, V, A, P, neg = g.edge_u, g.edge_v, g.edge_a, g.edge_p, g._neg_edge_a
    index, n = g._index, g.node_count
    BAL, UNB = TriangleClass.BALANCED, TriangleClass.UNBALANCED
    stop = _cutoff_index(g, a_t)
    limit = 0.5 + SLACK

    def work(lo, hi, collect):
        nb = nu = 0
        found = []
        near: dict[int, set[int]] = defaultdict(set)
        win_lo = win_hi = -1
        for i in range(hi - 1, lo - 1, -1):
            a = A[i]
            if a_t <= SLACK:
                b = 0.0
            elif a == 0.0:
                continue
            else:
                b = a_t / (4.0 * a * a)
                if b > limit:
                    continue
            top = bisect_right(neg, SLACK - b)
            if top <= i + 1:
                continue
            if win_lo < 0:
                win_lo = win_hi = i + 1
            for j in range(win_hi, top):
                near[U[j]].add(V[j])
                near[V[j]].add(U[j])
            for j in range(i + 1, win_lo):
                near[U[j]].add(V[j])
                near[V[j]].add(U[j])
            win_lo = i + 1
            if top > win_hi:
                win_hi = top
            u, v = U[i], V[i]
            su = near.get(u)
            if not su:
                continue
            sv = near.get(v)
            if not sv:
                continue
            common = su & sv
            if not common:
                continue
            pe = P[i]
            # set iteration order depends on how the window was built, so
            # enumeration walks the common neighbours in id order
            for w in sorted(common) if collect else common:
                pb = _pbal(
                    pe,
                    P[index[u * n + w] if u < w else index[w * n + u]],
                    P[index[v * n + w] if v < w else index[w * n + v]],
                )
                if pb >= t:
                    nb += 1
                    if collect:
                        found.append(_result(u, v, w, pb, BAL))
                elif pb < lower:
                    nu += 1
                    if collect:
                        found.append(_result(u, v, w, pb, UNB))
        return ClassCounts(nb, nu, None, None), found

    return _run_chunks(work, _chunks(stop, threads), threads, sink, reverse=True)


def enumerate_triangles(
    g: UncertainSignedGraph,
    th: Threshold | float,
    algorithm: str = "improved",
    threads: int = 1,
) -> list[TriangleResult]:
    found: list[TriangleResult] = []
    run = {"baseline": count_baseline, "improved": count_improved}[algorithm]
    run(g, th, found.append, threads)
    return found


# -- top-k ------------------------------------------------------------------


def top_k(
    g: UncertainSignedGraph,
    k: int,
    target: str = "balanced",
    floor: float = 0.5,
) -> list[TriangleResult]:
    """The ``k`` triangles most likely to be balanced (or unbalanced).

    Results are sorted by descending target probability, ties by ascending
    node triple. Only triangles that qualify at threshold ``floor`` are
    eligible. Once ``k`` candidates are held, the weakest of them becomes the
    new threshold and tightens the pruning for the rest of the search.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if target not in ("balanced", "unbalanced"):
        raise ValueError(f"target must be 'balanced' or 'unbalanced', got {target!r}")
    th = Threshold(floor)
    want = TriangleClass(target)
    U, V, A, P = g.edge_u, g.edge_v, g.edge_a, g.edge_p
    nbrs, eids, neg_a = g._nbrs, g._eids, g._neg_a
    index, n = g._index, g.node_count

    # min-heap keyed so the root is the current weakest member
    heap: list[tuple[float, tuple[int, int, int], TriangleResult]] = []
    level = th.a_t
    for i in range(g.edge_count):
        a = A[i]
        if a < level - SLACK:
            break
        b = _edge_bound(a, level)
        if b > 0.5 + SLACK:
            break
        cut = -(b - SLACK)
        u, v = U[i], V[i]
        lu, hu = bisect_right(eids[u], i), bisect_right(neg_a[u], cut)
        lv, hv = bisect_right(eids[v], i), bisect_right(neg_a[v], cut)
        if hu <= lu or hv <= lv:
            continue
        for w in set(nbrs[u][lu:hu]).intersection(nbrs[v][lv:hv]):
            pb = _pbal(P[i], P[index[u * n + w if u < w else w * n + u]], P[index[v * n + w if v < w else w * n + v]])
            cls = (
                TriangleClass.BALANCED if pb >= th.t
                else TriangleClass.UNBALANCED if pb < th.lower
                else TriangleClass.UNCLASSIFIED
            )
            if cls is not want:
                continue
            score = pb if want is TriangleClass.BALANCED else 1.0 - pb
            tri = _result(u, v, w, pb, cls)
            key = (score, tuple(-x for x in tri.nodes))
            if len(heap) < k:
                heapq.heappush(heap, (key[0], key[1], tri))
            elif key > heap[0][:2]:
                heapq.heapreplace(heap, (key[0], key[1], tri))
            else:
                continue
            if len(heap) == k:
                level = max(level, heap[0][0] - 0.5)
    ranked = sorted(heap, key=lambda h: (-h[0], h[2].nodes))
    return [h[2] for h in ranked]


# -- brute-force oracle -------------------------------------------------------


def brute_force_triangles(g: UncertainSignedGraph) -> list[tuple[int, int, int, float]]:
    """Every triangle as ``(u, v, w, p_bal)`` with ``u < v < w``.

    Tries all node triples and sums the probability of each of the eight sign
    assignments with an odd number of positive edges. Intended for graphs of
    at most a few hundred nodes.
    """
    n = g.node_count
    if n < 3:
        return []
    prob = np.full((n, n), np.nan)
    for e in g.edges:
        prob[e.u, e.v] = prob[e.v, e.u] = e.p_plus
    triples = np.array(list(itertools.combinations(range(n), 3)), dtype=np.int64)
    a, b, c = triples.T
    probs = np.stack([prob[a, b], prob[a, c], prob[b, c]], axis=1)
    keep = ~np.isnan(probs).any(axis=1)
    triples = triples[keep]
    # sorted per triangle so the sum below rounds exactly like the counting paths
    pab, pac, pbc = np.sort(probs[keep], axis=1).T
    balanced = np.zeros(len(triples))
    for signs in itertools.product((0, 1), repeat=3):
        world = np.ones(len(triples))
        for s, p in zip(signs, (pab, pac, pbc)):
            world = world * (p if s else 1.0 - p)
        if sum(signs) % 2 == 1:
            balanced = balanced + world
    return [(int(x), int(y), int(z), float(pb)) for (x, y, z), pb in zip(triples, balanced)]


def brute_force_oracle(g: UncertainSignedGraph, th: Threshold | float) -> ClassCounts:
    th = as_threshold(th)
    pb = np.array([tri[3] for tri in brute_force_triangles(g)])
    nb = int(np.count_nonzero(pb >= th.t))
    nu = int(np.count_nonzero(pb < 1.0 - th.t))
    return ClassCounts(nb, nu, len(pb) - nb - nu, len(pb))
