"""
Balance probability of a single triangle
========================================

Each edge of an uncertain signed graph carries the probability that its sign
is positive. A triangle is balanced when it has an odd number of positive
edges, so its balance probability sums the four worlds with one or three
positive edges.
"""

# %%
import itertools

from ubtri import balance_probability, classify, unbalance_probability

p = (0.9, 0.9, 0.9)
print("P(balanced)   =", round(balance_probability(*p), 6))
print("P(unbalanced) =", round(unbalance_probability(*p), 6))

# %%
# The same value by listing the eight sign assignments explicitly.

total = 0.0
for signs in itertools.product((0, 1), repeat=3):
    w = 1.0
    for s, q in zip(signs, p):
        w *= q if s else 1 - q
    tag = "balanced" if sum(signs) % 2 else "unbalanced"
    print(signs, f"{w:.4f}", tag)
    if sum(signs) % 2:
        total += w
print("sum over balanced worlds:", round(total, 6))

# %%
# A threshold t >= 0.5 sorts triangles into three classes. Anything between
# 1 - t and t is left unclassified.

for t in (0.7, 0.75, 0.8):
    print(f"t = {t}: p_bal 0.756 -> {classify(0.756, t)}")
print("t = 0.7: p_bal 0.77  ->", classify(0.77, 0.7))
print("t = 0.7: p_bal 0.468 ->", classify(0.468, 0.7))

# %%
# A coin-flip edge (p = 0.5) pins the triangle at exactly 0.5 whatever the
# other two edges are. That is why edges close to 0.5 can be pruned.

for q in (0.0, 0.3, 1.0):
    print(f"p = (0.5, {q}, 0.9): p_bal = {balance_probability(0.5, q, 0.9):.3f}")
