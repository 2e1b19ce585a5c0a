"""
How far from a coin flip must an edge be?
=========================================

The absolute value ``a = |p - 0.5|`` measures how certain an edge's sign is.
Since ``p_bal - 0.5 = 4 (p1 - .5)(p2 - .5)(p3 - .5)``, a triangle can only
reach threshold ``t`` when the product of its three absolute values is at
least ``(t - 0.5) / 4``. Three bounds follow from this.
"""

# %%
import numpy as np

from ubtri import Threshold, absolute_value, lemma2_excluded, lemma3_bound, pairwise_bound

t = 0.8
print("absolute cutoff a_t =", round(Threshold(t).a_t, 3))

# %%
# Exclusion: an edge with a < a_t cannot be in any balanced or unbalanced
# triangle, because the other two factors are at most 0.5 each.

for p in (0.6, 0.75, 0.8, 0.95):
    print(f"p = {p}: a = {absolute_value(p):.2f}, excluded at t = {t}: {lemma2_excluded(p, t)}")

# %%
# Edge bound: if the edge with the largest absolute value has value a, the
# other two need at least (t - 0.5) / (4 a^2). The exact counter walks edges
# from most to least certain and uses this to cut each neighbourhood short.

for p in (1.0, 0.95, 0.9, 0.85):
    b = lemma3_bound(p, t)
    print(f"largest edge p = {p}: others need a >= {b:.4f}" if b is not None else f"largest edge p = {p}: infeasible")

# %%
# Pairwise bound: with one edge fixed and the third unconstrained, the second
# edge needs a >= a_t / (2 a1). The vertex-sampling search uses this.

for a1 in (0.5, 0.4, 0.3):
    b = pairwise_bound(a1, t)
    print(f"a1 = {a1}: a2 >= {b:.4f}" if b is not None else f"a1 = {a1}: infeasible")

# %%
# A quick check on a grid. With p1 = 0.9 as the most certain edge, the others
# would need a >= 0.469 but are capped at 0.4, so no completion reaches t.
# Only a more certain partner edge can lift the triangle over the line.

grid = np.linspace(0, 1, 201)
q, r = np.meshgrid(grid, grid)
pb = 0.5 + 4 * (0.9 - 0.5) * (q - 0.5) * (r - 0.5)
print("max p_bal with p1 = 0.9:", pb.max())
ok = pb >= t
need = np.minimum(np.abs(q - 0.5), np.abs(r - 0.5))[ok & (np.abs(q - 0.5) <= 0.4) & (np.abs(r - 0.5) <= 0.4)]
print("completions reaching t with p1 as the most certain edge:", need.size)
print("completions reaching t overall:", int(ok.sum()))
