"""Reference computations that share no code with the package."""

import itertools

import numpy as np


def pbal_worlds(p1, p2, p3):
    """Balance probability by summing the 8 sign assignments with an odd
    number of positive edges."""
    total = 0.0
    for signs in itertools.product((0, 1), repeat=3):
        if sum(signs) % 2 == 1:
            w = 1.0
            for s, p in zip(signs, (p1, p2, p3)):
                w *= p if s else 1.0 - p
            total += w
    return total


def pbal_worlds_vec(p1, p2, p3):
    p1, p2, p3 = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (p1, p2, p3)))
    total = np.zeros(p1.shape)
    for signs in itertools.product((0, 1), repeat=3):
        if sum(signs) % 2 == 1:
            w = np.ones(p1.shape)
            for s, p in zip(signs, (p1, p2, p3)):
                w = w * (p if s else 1.0 - p)
            total = total + w
    return total


GRID = np.round(np.arange(0, 101) / 100, 2)


def max_balance_over_grid(p, grid=GRID):
    """Largest P_bal and largest P_unbal for a triangle with one edge fixed at
    ``p`` and the other two ranging over ``grid``."""
    q, r = np.meshgrid(grid, grid)
    pb = pbal_worlds_vec(p, q, r)
    return float(pb.max()), float((1.0 - pb).max())


def bisect_third_edge(p, t, lo=0.5, hi=1.0, iters=200):
    """Smallest x in [lo, hi] with pbal_worlds(p, p, x) >= t (p >= 0.5)."""
    for _ in range(iters):
        mid = (lo + hi) / 2
        if pbal_worlds(p, p, mid) >= t:
            hi = mid
        else:
            lo = mid
    return hi


def triangles_of(edges):
    """Map of node triple -> three probabilities, by brute force over an
    adjacency dict built from ``(u, v, p)`` edges."""
    adj = {}
    for u, v, p in edges:
        adj.setdefault(u, {})[v] = p
        adj.setdefault(v, {})[u] = p
    nodes = sorted(adj)
    out = {}
    for a, b, c in itertools.combinations(nodes, 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            out[(a, b, c)] = (adj[a][b], adj[a][c], adj[b][c])
    return out


def random_edges(rng, n, density, dist="uniform"):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                p = rng.random() if dist == "uniform" else rng.beta(0.5, 0.5)
                edges.append((u, v, float(p)))
    return edges
