# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Searching for distinct tautologies
#
# Given `n` and a minimum term size `k`, find a DNF tautology whose terms have
# pairwise distinct supports, all of size at least `k` (or exactly `m` in the
# uniform variant).  Greedy coverage seeds a depth-first search; the exhaustive
# strategy is branch and bound and proves optimality when it finishes.

# %%
import os

from cubecover.boolean import density_bound_A, density_bound_B, format_dnf
from cubecover.search import SearchConfig, certify, search_distinct, search_uniform

BUDGET = float(os.environ.get("DEMO_BUDGET", "5"))

# %%
for n in range(2, 9):
    k = density_bound_A(n)
    out = search_distinct(SearchConfig(n, k, time_limit=BUDGET))
    print(f"n={n} k={k}: {out.status.value}, {len(out.best)} terms, "
          f"source {out.source}, certified {certify(out)}")

# %% [markdown]
# Three single literals leave one vertex of the 3-cube uncovered, and nothing
# better exists:

# %%
out = search_uniform(SearchConfig(3, 1, strategy="exhaustive"))
print(out.status.value, out.proof, out.uncovered_count)
print(format_dnf(out.best))

# %%
out = search_uniform(SearchConfig(5, 3, strategy="exhaustive", time_limit=None, node_limit=10**8))
print("uniform n=5 m=3:", out.status.value, out.uncovered_count, "uncovered,", out.nodes_explored, "nodes")

# %% [markdown]
# ## Larger instances
#
# Budgeted best-effort runs.  The numbers to beat are the best-effort counts
# reported for these sizes elsewhere.

# %%
for uniform, n, size, reference in [(False, 10, 7, 16), (True, 9, 6, 13),
                                    (True, 13, 9, 102), (False, 14, 10, 276)]:
    cfg = SearchConfig(n, size, uniform=uniform, time_limit=BUDGET)
    out = (search_uniform if uniform else search_distinct)(cfg)
    print(f"{'uniform ' if uniform else 'distinct'} n={n} size={size}: "
          f"{out.uncovered_count} uncovered of {1 << n} (reference {reference})")
