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
# # Residue classes as sub-boxes
#
# For square-free `M`, reduction modulo each prime factor turns `[0, M)` into a
# box with one coordinate per prime.  A class `a (mod m)` with `m | M` pins the
# coordinates of the primes dividing `m` and leaves the rest free.

# %%
import numpy as np

from cubecover.boxcover import box_cover_check
from cubecover.congruence import CongruenceClass, CongruenceSystem
from cubecover.crt import (
    class_to_subbox,
    crt_inverse_array,
    crt_map,
    crt_map_array,
    factorize,
    subbox_to_class,
    system_cover_equivalence,
    system_to_subboxes,
)
from cubecover.errors import UnsupportedCase

# %%
fac = factorize(30)
print("7 ->", crt_map(7, fac))
sb = class_to_subbox(CongruenceClass(7, 10), fac)
print("7 mod 10 fixes", dict(sb.fixed), "in box", sb.box.radices, "->", sb.point_count, "points")
print("back:", subbox_to_class(sb, fac))

# %% [markdown]
# The vectorised map and its inverse round-trip a whole period at once.

# %%
fac = factorize(2 * 3 * 5 * 7 * 11 * 13)
xs = np.arange(fac.value)
points = crt_map_array(xs, fac)
print(points[:3], "...")
print("round trip exact:", np.array_equal(crt_inverse_array(points, fac), xs))

# %% [markdown]
# A covering system over lcm 30 and its box picture agree on coverage.

# %%
system = CongruenceSystem.of([(0, 2), (0, 3), (1, 3), (5, 10), (11, 30), (17, 30), (23, 30), (29, 30)])
fac, subboxes = system_to_subboxes(system)
print("integer scan and box scan agree:", system_cover_equivalence(system))
print(box_cover_check(fac.box, subboxes))

# %% [markdown]
# Prime powers have no sub-box picture.

# %%
try:
    system_to_subboxes(CongruenceSystem.of([(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)]))
except UnsupportedCase as exc:
    print("rejected:", exc)
