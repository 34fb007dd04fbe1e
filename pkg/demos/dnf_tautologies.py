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
# # DNF tautologies as subcube covers
#
# A conjunction of `t` literals in `n` variables is a subcube with `2^(n-t)`
# vertices; a DNF is a tautology when its subcubes cover the cube.  Vertex `v`
# assigns `x_i` to bit `i-1` of `v`.

# %%
from collections import Counter

from cubecover.boolean import (
    boolean_mndr_check,
    dnf_coverage,
    enumerate_exact_tautologies,
    format_dnf,
    is_distinct_dnf,
    is_exact_dnf,
    is_tautology,
    parse_dnf,
    pigeonhole_tautology,
)

# %%
dnf = parse_dnf("n = 3\nx1\nx2\nx3\n")
cover, missing = dnf_coverage(dnf)
print(dnf, "misses", missing, "vertex:", [v for v in range(8) if v not in cover])

# %% [markdown]
# ## The threshold construction
#
# Either at least `t` variables are true or at least `n - t + 1` are false, so
# all `t`-sets of positive literals plus all `(n-t)`-sets of negative literals
# cover the cube, with distinct supports when `t != n/2`.

# %%
ph = pigeonhole_tautology(7, 3)
print(len(ph), "terms, min size", ph.min_size)
print("tautology:", is_tautology(ph), "distinct:", is_distinct_dnf(ph), "exact:", is_exact_dnf(ph))
print(format_dnf(pigeonhole_tautology(3, 1)))

# %% [markdown]
# ## Exact tautologies in small dimension
#
# Every partition of the 3-cube into subcubes, found by always splitting on the
# lowest uncovered vertex.  In each one the largest term size occurs at least
# twice, apart from the single empty term.

# %%
parts = enumerate_exact_tautologies(3)
print(len(parts), "partitions of the 3-cube")
print(Counter(boolean_mndr_check(d).multiplicity for d in parts))
