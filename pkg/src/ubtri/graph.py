"""Uncertain signed graph: edge-list I/O, orderings and adjacency views."""

from __future__ import annotations

import io
import logging
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from .balance import absolute_value

log = logging.getLogger(__name__)

FORMATS = ("probabilistic", "signed", "plain")
_SIGNS = {"+1": 1, "1": 1, "-1": -1, "−1": -1}


class EdgeListError(ValueError):
    """Malformed edge-list input. ``lineno`` is 1-based, or ``None``."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


@dataclass
class RawEdges:
    """Parsed edge list before node remapping.

    ``values`` holds positive-sign probabilities for the probabilistic format,
    ``+1``/``-1`` for the signed format, and ``None`` for plain input.
    """

    src: list
    dst: list
    values: list | None
    kind: str = "probabilistic"
    duplicates: int = 0
    self_loops: int = 0

    def __len__(self) -> int:
        return len(self.src)

    @property
    def probabilities(self) -> list[float]:
        if self.kind != "probabilistic":
            raise ValueError(f"{self.kind} edges carry no probabilities")
        return self.values


def _label(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def load_edge_list(source: IO | str | bytes | Iterable[str], format: str = "probabilistic") -> RawEdges:
    """Parse a whitespace-separated edge list.

    Parameters
    ----------
    source : text or binary stream, str/bytes content, or iterable of lines
    format : {"probabilistic", "signed", "plain"}
        ``"u v p"`` lines, ``"u v s"`` lines with ``s`` in ``{+1, -1, 1}``, or
        ``"u v"`` lines (any third column is ignored).

    Returns
    -------
    RawEdges
        Self-loops dropped; for duplicate (undirected) pairs the first
        occurrence wins and ``duplicates`` counts the rest.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown edge-list format {format!r}")
    if isinstance(source, bytes):
        source = source.decode()
    if isinstance(source, str):
        source = io.StringIO(source)

    src, dst, vals = [], [], []
    seen = set()
    dups = loops = 0
    want = 2 if format == "plain" else 3
    for lineno, line in enumerate(source, 1):
        if isinstance(line, bytes):
            line = line.decode()
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != want and not (format == "plain" and len(parts) == 3):
            raise EdgeListError(f"expected {want} fields, got {len(parts)}", lineno)
        u, v = _label(parts[0]), _label(parts[1])
        if format == "probabilistic":
            try:
                val = float(parts[2])
            except ValueError:
                raise EdgeListError(f"unparsable probability {parts[2]!r}", lineno) from None
            if not 0.0 <= val <= 1.0:
                raise EdgeListError(f"probability {parts[2]} outside [0, 1]", lineno)
        elif format == "signed":
            try:
                val = _SIGNS[parts[2]]
            except KeyError:
                raise EdgeListError(f"invalid sign {parts[2]!r}", lineno) from None
        else:
            val = None
        if u == v:
            loops += 1
            continue
        key = (u, v) if _sort_key(u) <= _sort_key(v) else (v, u)
        if key in seen:
            dups += 1
            continue
        seen.add(key)
        src.append(u)
        dst.append(v)
        vals.append(val)

    if not src:
        raise EdgeListError("edge list contains no edges")
    if dups:
        log.warning("dropped %d duplicate edge(s)", dups)
    return RawEdges(src, dst, None if format == "plain" else vals, format, dups, loops)


def _sort_key(label):
    # ints sort numerically and before strings
    return (0, label, "") if isinstance(label, int) else (1, 0, str(label))


@dataclass(frozen=True, order=False)
class EdgeRecord:
    u: int
    v: int
    p_plus: float
    a_value: float = field(init=False)

    def __post_init__(self):
        if self.u >= self.v:
            raise ValueError(f"edge endpoints must satisfy u < v, got ({self.u}, {self.v})")
        if not 0.0 <= self.p_plus <= 1.0:
            raise ValueError(f"probability {self.p_plus!r} outside [0, 1]")
        object.__setattr__(self, "a_value", absolute_value(self.p_plus))

    @property
    def aeo_key(self) -> tuple[float, int, int]:
        return (-self.a_value, self.u, self.v)


def aeo_before(e1: EdgeRecord, e2: EdgeRecord) -> bool:
    """Absolute Edge Order: larger absolute value first, ties by endpoint ids."""
    return e1.aeo_key < e2.aeo_key


class UncertainSignedGraph:
    """Immutable undirected graph whose edges carry positive-sign probabilities.

    Nodes are dense ids ``0..n-1``; ``labels[i]`` is the original label of node
    ``i``. Edge ids are positions in Absolute Edge Order, so a smaller edge id
    always means an earlier edge.

    Two adjacency views are kept: every node's neighbours sorted by edge id
    (descending absolute value), and the forward neighbour sets under Node
    Order used by the baseline enumeration.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int, float]], labels: Sequence | None = None):
        self.node_count = int(n)
        self.labels = list(labels) if labels is not None else list(range(n))
        if len(self.labels) != n:
            raise ValueError("labels length does not match node count")

        recs = []
        for u, v, p in edges:
            u, v = (u, v) if u < v else (v, u)
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u and v < n):
                raise ValueError(f"edge ({u}, {v}) references a node outside 0..{n - 1}")
            recs.append(EdgeRecord(u, v, float(p)))
        recs.sort(key=lambda e: e.aeo_key)
        self.edges: tuple[EdgeRecord, ...] = tuple(recs)
        m = len(recs)

        self.edge_u = [e.u for e in recs]
        self.edge_v = [e.v for e in recs]
        self.edge_p = [e.p_plus for e in recs]
        self.edge_a = [e.a_value for e in recs]
        self._neg_edge_a = [-a for a in self.edge_a]
        self._index = {}
        for i, e in enumerate(recs):
            key = e.u * n + e.v
            if key in self._index:
                raise ValueError(f"duplicate edge ({e.u}, {e.v})")
            self._index[key] = i

        nbrs = [[] for _ in range(n)]
        eids = [[] for _ in range(n)]
        for i, e in enumerate(recs):
            nbrs[e.u].append(e.v)
            eids[e.u].append(i)
            nbrs[e.v].append(e.u)
            eids[e.v].append(i)
        # edge ids were appended in increasing order, so each list is AEO-sorted
        self._nbrs = nbrs
        self._eids = eids
        self._neg_a = [[-self.edge_a[i] for i in row] for row in eids]
        self._nbr_sets = [frozenset(row) for row in nbrs]

        self.degree = np.fromiter((len(r) for r in nbrs), dtype=np.int64, count=n)
        order = sorted(range(n), key=lambda x: (len(nbrs[x]), x))
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        self.node_order = order
        self.node_order_rank = rank
        rk = rank.tolist()
        self._fwd = [frozenset(w for w in nbrs[x] if rk[w] > rk[x]) for x in range(n)]
        self.edge_count = m

    # -- construction -----------------------------------------------------

    @classmethod
    def from_raw(cls, raw: RawEdges) -> UncertainSignedGraph:
        """Build from parsed probabilistic edges, remapping labels densely.

        Labels are sorted (integers numerically, before strings) so that the
        remap is independent of line order.
        """
        probs = raw.probabilities
        labels = sorted(set(raw.src) | set(raw.dst), key=_sort_key)
        ids = {lab: i for i, lab in enumerate(labels)}
        edges = [(ids[a], ids[b], p) for a, b, p in zip(raw.src, raw.dst, probs)]
        return cls(len(labels), edges, labels)

    # -- queries ----------------------------------------------------------

    def node_order_before(self, u: int, v: int) -> bool:
        """Node Order: lower degree first, ties by id."""
        return self.node_order_rank[u] < self.node_order_rank[v]

    def edge_id(self, u: int, v: int) -> int | None:
        if u > v:
            u, v = v, u
        if u < 0 or v >= self.node_count:
            return None
        return self._index.get(u * self.node_count + v)

    def edge_probability(self, u: int, v: int) -> float | None:
        i = self.edge_id(u, v)
        return None if i is None else self.edge_p[i]

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_id(u, v) is not None

    def adjacency(self, u: int) -> list[tuple[int, float, float, int]]:
        """``(neighbour, p_plus, a_value, edge_id)`` entries in Absolute Edge Order."""
        return [(w, self.edge_p[i], self.edge_a[i], i) for w, i in zip(self._nbrs[u], self._eids[u])]

    def neighbors(self, u: int) -> frozenset[int]:
        return self._nbr_sets[u]

    def forward_neighbors(self, u: int) -> frozenset[int]:
        """Neighbours after ``u`` in Node Order."""
        return self._fwd[u]

    def prefix_len(self, u: int, min_a: float) -> int:
        """Number of leading adjacency entries of ``u`` with ``a_value >= min_a``."""
        return bisect_right(self._neg_a[u], -min_a)

    def triangle_count(self) -> int:
        fwd = self._fwd
        return sum(len(fwd[u] & fwd[v]) for u in range(self.node_count) for v in fwd[u])

    def flipped(self) -> UncertainSignedGraph:
        """Copy with every probability replaced by ``1 - p``."""
        return UncertainSignedGraph(
            self.node_count,
            [(e.u, e.v, 1.0 - e.p_plus) for e in self.edges],
            self.labels,
        )

    def __repr__(self) -> str:
        return f"UncertainSignedGraph(nodes={self.node_count}, edges={self.edge_count})"


def build_graph(raw: RawEdges) -> UncertainSignedGraph:
    return UncertainSignedGraph.from_raw(raw)


def read_graph(path, format: str = "probabilistic") -> UncertainSignedGraph:
    with open(path) as fh:
        return build_graph(load_edge_list(fh, format))


def write_edge_list(g: UncertainSignedGraph, out: IO[str]) -> None:
    """Write ``u v p`` lines with original labels and round-trip precision."""
    out.write(f"# nodes {g.node_count} edges {g.edge_count}\n")
    lab = g.labels
    for e in g.edges:
        out.write(f"{lab[e.u]} {lab[e.v]} {e.p_plus!r}\n")


def write_raw(raw: RawEdges, probs: Sequence[float], out: IO[str]) -> None:
    """Write ``raw``'s endpoints with new probabilities, preserving line order."""
    out.write(f"# edges {len(raw)}\n")
    for a, b, p in zip(raw.src, raw.dst, probs):
        out.write(f"{a} {b} {float(p)!r}\n")
