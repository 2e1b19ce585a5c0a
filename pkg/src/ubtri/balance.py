"""Balance probabilities, threshold classification and pruning bounds.

Every function here is pure. Probabilities are plain Python floats and all
comparisons are exact IEEE comparisons.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class TriangleClass(enum.Enum):
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"
    UNCLASSIFIED = "unclassified"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Threshold:
    """User probability threshold ``t`` in ``[0.5, 1]``.

    ``a_t`` is the matching absolute cutoff ``t - 0.5``. The subtraction is
    exact in double precision for every valid ``t``.
    """

    t: float

    def __post_init__(self):
        t = float(self.t)
        if not 0.5 <= t <= 1.0:
            raise ValueError(f"threshold t must lie in [0.5, 1], got {self.t!r}")
        object.__setattr__(self, "t", t)

    @property
    def a_t(self) -> float:
        return self.t - 0.5

    @property
    def lower(self) -> float:
        """``1 - t``; triangles with ``p_bal`` strictly below it are unbalanced."""
        return 1.0 - self.t


def as_threshold(th: Threshold | float) -> Threshold:
    return th if isinstance(th, Threshold) else Threshold(th)


@dataclass
class ClassCounts:
    """Per-class triangle counts.

    ``unclassified`` and ``total`` are ``None`` when the producing algorithm
    never visits unclassified triangles.
    """

    balanced: int = 0
    unbalanced: int = 0
    unclassified: int | None = 0
    total: int | None = 0

    def merge(self, other: ClassCounts) -> ClassCounts:
        def _add(x, y):
            return None if x is None or y is None else x + y

        return ClassCounts(
            self.balanced + other.balanced,
            self.unbalanced + other.unbalanced,
            _add(self.unclassified, other.unclassified),
            _add(self.total, other.total),
        )

    def as_dict(self) -> dict:
        out = {"balanced": self.balanced, "unbalanced": self.unbalanced}
        if self.unclassified is not None:
            out["unclassified"] = self.unclassified
        if self.total is not None:
            out["total"] = self.total
        return out


def _check_prob(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")


def balance_probability(p1: float, p2: float, p3: float) -> float:
    """Probability that a triangle with positive-sign probabilities
    ``p1, p2, p3`` has an odd number of positive edges.

    >>> balance_probability(1.0, 1.0, 1.0)
    1.0
    >>> balance_probability(0.0, 0.0, 1.0)
    1.0
    """
    _check_prob(p1)
    _check_prob(p2)
    _check_prob(p3)
    return _pbal(p1, p2, p3)


def _pbal(p1: float, p2: float, p3: float) -> float:
    # unchecked fast path shared by the counting algorithms. Inputs are
    # sorted and the four odd-parity worlds summed in a fixed order, so the
    # result is bit-identical for every permutation of the edges.
    if p1 > p2:
        p1, p2 = p2, p1
    if p2 > p3:
        p2, p3 = p3, p2
        if p1 > p2:
            p1, p2 = p2, p1
    n1 = 1.0 - p1
    n2 = 1.0 - p2
    n3 = 1.0 - p3
    return n1 * n2 * p3 + n1 * p2 * n3 + p1 * n2 * n3 + p1 * p2 * p3


def unbalance_probability(p1: float, p2: float, p3: float) -> float:
    return 1.0 - balance_probability(p1, p2, p3)


def classify(p_bal: float, th: Threshold | float) -> TriangleClass:
    """Classify a triangle from its balance probability.

    Balanced when ``p_bal >= t``; unbalanced when ``p_bal < 1 - t`` (the
    exact-arithmetic form of ``1 - p_bal > t``); unclassified otherwise.
    """
    th = as_threshold(th)
    if p_bal >= th.t:
        return TriangleClass.BALANCED
    if p_bal < th.lower:
        return TriangleClass.UNBALANCED
    return TriangleClass.UNCLASSIFIED


# Pruning tolerance. A computed p_bal can round onto the threshold even when
# the exact value of the same inputs falls just short of it (and the reverse),
# so every bound below errs on the side of keeping candidates by this margin.
# Classification itself stays an exact comparison.
SLACK = 1e-12


def absolute_value(p: float) -> float:
    """Distance of a sign probability from a coin flip, ``|p - 0.5|``."""
    return abs(p - 0.5)


def lemma2_excluded(p: float, th: Threshold | float) -> bool:
    """True when no triangle containing an edge of probability ``p`` can be
    balanced or unbalanced at threshold ``th``.

    The comparison is strict, so an edge with ``p == t`` is kept.
    """
    th = as_threshold(th)
    return absolute_value(p) < th.a_t - SLACK


def lemma3_bound(p: float, th: Threshold | float) -> float | None:
    """Minimum absolute value for the two remaining edges of a qualifying
    triangle whose largest absolute value belongs to the edge with
    probability ``p``.

    Returns ``None`` when no such triangle can exist (the bound exceeds 0.5,
    or ``p`` is a coin flip while ``t > 0.5``).

    Uses ``(t - 0.5) / (4 a(p)^2)``, which equals ``a(x)`` for
    ``x = (2p^2 - 2p + t) / (4p^2 - 4p + 1)`` but stays well conditioned near
    ``p = 0.5``.
    """
    th = as_threshold(th)
    if th.a_t <= SLACK:
        return 0.0
    a = absolute_value(p)
    if a == 0.0:
        return None
    bound = th.a_t / (4.0 * a * a) - SLACK
    return None if bound > 0.5 else max(bound, 0.0)


def pairwise_bound(a1: float, th: Threshold | float) -> float | None:
    """Minimum absolute value of a second edge when the first has absolute
    value ``a1`` and the third edge is unconstrained.

    From ``p_bal - 0.5 = 4 d1 d2 d3`` with ``|d3| <= 0.5`` the largest reachable
    deviation is ``2 a1 a2``. Returns ``None`` if the bound exceeds 0.5 or
    ``a1`` is zero. At ``t = 0.5`` every triangle qualifies and the bound is 0.
    """
    th = as_threshold(th)
    if th.a_t <= SLACK:
        return 0.0
    if a1 <= 0.0:
        return None
    bound = th.a_t / (2.0 * a1) - SLACK
    return None if bound > 0.5 else max(bound, 0.0)
