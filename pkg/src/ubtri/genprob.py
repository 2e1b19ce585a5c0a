"""Assign positive-sign probabilities to edge lists.

Supported distributions: uniform on [0, 1], Beta(a, b), Normal(mu, sigma)
clipped to [0, 1], and a sign-conditioned Beta that draws from Beta(a, b) for
positive edges and from the mirrored Beta(b, a) for negative ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .graph import RawEdges

KINDS = ("uniform", "beta", "normal", "signed-beta")


@dataclass(frozen=True)
class DistributionSpec:
    kind: str = "uniform"
    alpha: float = 0.5
    beta: float = 0.5
    mu: float = 0.5
    sigma: float = 0.15
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("beta", "signed-beta") and not (self.alpha > 0 and self.beta > 0):
            raise ValueError(f"beta parameters must be positive, got ({self.alpha}, {self.beta})")
        if self.kind == "normal" and not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> DistributionSpec:
        """Parse ``uniform``, ``beta:A,B``, ``normal:MU,SIGMA`` or
        ``signed-beta[:A,B]``.

        >>> DistributionSpec.parse("beta:3,1").alpha
        3.0
        """
        name, _, args = text.partition(":")
        try:
            vals = [float(x) for x in args.split(",")] if args else []
        except ValueError:
            raise ValueError(f"bad distribution parameters in {text!r}") from None
        if name == "uniform" and not vals:
            return cls("uniform", seed=seed)
        if name == "beta" and len(vals) == 2:
            return cls("beta", alpha=vals[0], beta=vals[1], seed=seed)
        if name == "normal" and len(vals) == 2:
            return cls("normal", mu=vals[0], sigma=vals[1], seed=seed)
        if name == "signed-beta" and len(vals) in (0, 2):
            a, b = vals or (3.0, 1.0)
            return cls("signed-beta", alpha=a, beta=b, seed=seed)
        raise ValueError(f"cannot parse distribution {text!r}")

    def __str__(self) -> str:
        if self.kind == "uniform":
            return "uniform"
        if self.kind == "normal":
            return f"normal:{self.mu:g},{self.sigma:g}"
        return f"{self.kind}:{self.alpha:g},{self.beta:g}"


def draw(spec: DistributionSpec, n: int, signs=None) -> np.ndarray:
    """``n`` probabilities from ``spec``; ``signs`` (+1/-1) is required for
    the sign-conditioned kind."""
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "uniform":
        return rng.random(n)
    if spec.kind == "beta":
        return rng.beta(spec.alpha, spec.beta, n)
    if spec.kind == "normal":
        return np.clip(rng.normal(spec.mu, spec.sigma, n), 0.0, 1.0)
    if signs is None:
        raise ValueError("signed-beta needs a signed edge list")
    signs = np.asarray(signs)
    if signs.shape != (n,) or not np.all(np.isin(signs, (1, -1))):
        raise ValueError("signs must be a sequence of +1/-1 with one entry per edge")
    x = rng.beta(spec.alpha, spec.beta, n)
    return np.where(signs > 0, x, 1.0 - x)


def assign(raw: RawEdges, spec: DistributionSpec) -> RawEdges:
    """Return a probabilistic copy of ``raw`` with one independent draw per
    edge, in input order."""
    if spec.kind == "signed-beta":
        if raw.kind != "signed":
            raise ValueError("signed-beta requires a signed edge list")
        probs = draw(spec, len(raw), raw.values)
    else:
        probs = draw(spec, len(raw))
    return RawEdges(
        list(raw.src), list(raw.dst), probs.tolist(), "probabilistic", raw.duplicates, raw.self_loops
    )


@dataclass
class DensityTable:
    x: np.ndarray
    pdf: np.ndarray
    mass_at_0: float = 0.0
    mass_at_1: float = 0.0


def describe(spec: DistributionSpec, points: int = 101) -> DensityTable:
    """Density of ``spec`` on an evenly spaced grid over [0, 1].

    For the clipped normal the interior density is reported and the
    probability piled onto 0 and 1 goes in ``mass_at_0``/``mass_at_1``. The
    sign-conditioned kind reports the positive-edge density.
    """
    x = np.linspace(0.0, 1.0, points)
    if spec.kind == "uniform":
        return DensityTable(x, np.ones_like(x))
    if spec.kind in ("beta", "signed-beta"):
        return DensityTable(x, stats.beta(spec.alpha, spec.beta).pdf(x))
    dist = stats.norm(spec.mu, spec.sigma)
    return DensityTable(x, dist.pdf(x), float(dist.cdf(0.0)), float(dist.sf(1.0)))


def summarize(probs) -> dict:
    p = np.asarray(probs, dtype=float)
    q = np.quantile(p, [0.05, 0.25, 0.5, 0.75, 0.95])
    return {
        "edges": int(p.size),
        "mean": float(p.mean()),
        "quantiles": dict(zip(("p05", "p25", "p50", "p75", "p95"), (float(v) for v in q))),
        "frac_a_gt_0.4": float(np.mean(np.abs(p - 0.5) > 0.4)),
        "frac_in_0.2_0.8": float(np.mean((p >= 0.2) & (p <= 0.8))),
    }
