"""
Estimating counts by sampling vertices or edges
===============================================

Drawing nodes (or edges) uniformly with replacement and scaling their local
counts by |V|/3 (or |E|/3) gives an unbiased estimate of the exact count.
Edge sampling is cheaper per sample; the pruned local searches cheaper
still.
"""

# %%
import numpy as np
import networkx as nx

from ubtri import UncertainSignedGraph, count_baseline, estimate
from ubtri.bench import mape_curve
from ubtri.genprob import DistributionSpec, draw

G = nx.gnm_random_graph(1000, 10_000, seed=7)
probs = draw(DistributionSpec.parse("beta:0.5,0.5", seed=7), G.number_of_edges())
g = UncertainSignedGraph(1000, [(u, v, float(p)) for (u, v), p in zip(G.edges(), probs)])
t = 0.8
exact = count_baseline(g, t)
truth = (exact.balanced, exact.unbalanced)
print("exact (balanced, unbalanced):", truth)

# %%
# One run per method, with running estimates recorded along the way.

for mode in ("vertex", "edge"):
    for variant in ("baseline", "improved"):
        rep = estimate(g, t, 5000, seed=1, mode=mode, variant=variant, checkpoints=[100, 1000, 5000])
        path = ", ".join(f"{k}: {b:.1f}" for k, (b, _) in sorted(rep.history.items()))
        print(f"{mode:>6}-{variant:<8} {rep.qps:>10,.0f} samples/s  balanced estimate {path}")

# %%
# Averaged over many runs the error shrinks as samples accumulate.

for mode in ("vertex", "edge"):
    curve = mape_curve(g, t, mode, "improved", truth, (100, 1000, 10_000), runs=20)
    print(mode, {k: round(curve.mape(k)[0], 1) for k in (100, 1000, 10_000)}, "% MAPE (balanced)")

# %%
# The estimator is unbiased: the mean over runs sits on the exact count.

est = np.array([estimate(g, t, 500, seed=s).est_balanced for s in range(300)])
print(f"mean of 300 edge estimates: {est.mean():.1f} +/- {est.std(ddof=1) / np.sqrt(len(est)):.1f}  (exact {truth[0]})")
