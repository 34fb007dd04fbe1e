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
# # Covering systems
#
# A finite set of residue classes covers the integers exactly when it covers
# one period `[0, lcm)`.  We check the classic five-class system, then grow
# exact covers by splitting classes and test the two multiplicity theorems.

# %%
import numpy as np

from cubecover.congruence import (
    CongruenceSystem,
    density,
    is_distinct,
    is_exact,
    random_exact_system,
    split_refine,
    top_moduli_check,
    verify_cover,
    znam_multiplicity_check,
)

# %%
erdos = CongruenceSystem.of([(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)])
report = verify_cover(erdos)
print(erdos, "lcm", erdos.lcm)
print("covers:", report.is_cover, "distinct:", is_distinct(erdos), "exact:", is_exact(erdos))
print("points per coverage count:", report.multiplicity_histogram)

# %% [markdown]
# The density sum exceeds the period, 16 against 12, so some integers are hit
# twice.  Dropping the last class leaves a gap.

# %%
print("sum M/m_i =", density(erdos))
gap = CongruenceSystem(erdos.classes[:-1])
print("without 7 mod 12, uncovered:", verify_cover(gap).uncovered.tolist())

# %% [markdown]
# ## Exact covers by splitting
#
# Replacing `a (mod m)` by the `p` classes `a + j m (mod p m)` keeps a
# partition a partition.

# %%
system = CongruenceSystem.of([(0, 1)])
for i, p in [(0, 2), (1, 3), (0, 2), (3, 5)]:
    system = split_refine(system, i, p)
print(system)
print("exact cover:", is_exact(system) and verify_cover(system).is_cover)
print(top_moduli_check(system))
print(znam_multiplicity_check(system))

# %%
rng = np.random.default_rng(0)
holds = 0
for _ in range(200):
    s = random_exact_system(rng, int(rng.integers(1, 30)))
    holds += top_moduli_check(s).holds and znam_multiplicity_check(s).holds
print(f"{holds}/200 random exact covers satisfy both checks")
