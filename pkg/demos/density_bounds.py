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
# # Density bounds
#
# Distinct supports of size `i` can each be used once and cover `2^(n-i)`
# vertices, so covering needs `sum_{i>=k} C(n,i) / 2^i >= 1`.  All values are
# exact fractions.

# %%
from fractions import Fraction

from cubecover.boolean import bound_table
from cubecover.boxcover import Box, max_feasible_codimension, reciprocal_diagnostics, symmetric_tail

# %%
for kind, mode in [("A", "weak"), ("B", "strict"), ("B", "weak")]:
    table = bound_table(kind, 14, mode)
    print(kind, mode, list(table.values))

# %%
for n, k, tail in bound_table("A", 8).rows():
    print(f"n={n:2d}  k={k}  tail={tail}  ({float(tail):.4f})")

# %% [markdown]
# Weak and strict comparison disagree only at `n = 2` for the uniform table:
# `C(2,1)/2 = 1` exactly.  The general box version replaces the binomial sum by
# elementary symmetric polynomials of the reciprocal radices.

# %%
print(symmetric_tail(Box((2, 3, 5)), 1))
print("largest codimension, box 2x3x5:", max_feasible_codimension(Box((2, 3, 5))))
s, p = reciprocal_diagnostics([2, 3, 5, 7, 11, 13, 17, 19, 23])
print("sum 1/p =", s, "~", float(s))
print("prod (1 + 1/p) =", p, "~", float(p))
print(Fraction(11, 30) == symmetric_tail(Box((2, 3, 5)), 2)[0])
