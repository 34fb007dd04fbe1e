"""Chinese-remainder bridge between residue classes and sub-boxes.

For square-free ``M = p_1 ... p_k`` the map ``x -> (x mod p_1, ..., x mod p_k)``
is a bijection from ``[0, M)`` onto the box ``[0, p_1) x ... x [0, p_k)``.
A class ``a (mod m)`` with ``m | M`` becomes the sub-box fixing the coordinate
of every prime ``p | m`` to ``a mod p``.  Coordinates follow ascending primes.

Prime powers are rejected: a class modulo ``p^s`` with ``s < r`` pins a residue
class of a coordinate rather than a coordinate value, which is not a sub-box.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .boxcover import Box, SubBox, box_cover_check
from .congruence import CongruenceClass, CongruenceSystem, verify_cover
from .errors import UnsupportedCase


@dataclass(frozen=True)
class PrimeFactorization:
    primes: tuple[int, ...]
    exponents: tuple[int, ...]

    @property
    def value(self):
        return prod(p**r for p, r in zip(self.primes, self.exponents))

    @property
    def is_squarefree(self):
        return all(r == 1 for r in self.exponents)

    @property
    def box(self):
        return Box(self.primes)

    def require_squarefree(self):
        for p, r in zip(self.primes, self.exponents):
            if r > 1:
                raise UnsupportedCase(
                    f"M = {self.value} is not square-free: {p}^{r} divides it; "
                    "only square-free moduli map to sub-boxes"
                )

    def __str__(self):
        if not self.primes:
            return "1"
        return " * ".join(str(p) if r == 1 else f"{p}^{r}"
                          for p, r in zip(self.primes, self.exponents))


def factorize(M: int) -> PrimeFactorization:
    """Ascending prime factorization by trial division."""
    if M < 1:
        raise ValueError(f"can only factor positive integers, got {M}")
    primes, exps = [], []
    d = 2
    while d * d <= M:
        if M % d == 0:
            r = 0
            while M % d == 0:
                M //= d
                r += 1
            primes.append(d)
            exps.append(r)
        d += 1 if d == 2 else 2
    if M > 1:
        primes.append(M)
        exps.append(1)
    return PrimeFactorization(tuple(primes), tuple(exps))


def crt_map(x: int, fac: PrimeFactorization) -> tuple[int, ...]:
    fac.require_squarefree()
    if not 0 <= x < fac.value:
        raise ValueError(f"{x} outside [0, {fac.value})")
    return tuple(x % p for p in fac.primes)


def _lift_coefficients(fac):
    # e_i = 1 (mod p_i), 0 (mod p_j) for j != i
    M = fac.value
    return [(M // p) * pow(M // p, -1, p) for p in fac.primes]


def crt_inverse(point, fac: PrimeFactorization) -> int:
    """The unique ``x`` in ``[0, M)`` with ``x = point[i] (mod p_i)`` for all ``i``."""
    fac.require_squarefree()
    if len(point) != len(fac.primes):
        raise ValueError(f"point has {len(point)} coordinates, box has {len(fac.primes)}")
    for c, p in zip(point, fac.primes):
        if not 0 <= c < p:
            raise ValueError(f"coordinate {c} out of range for prime {p}")
    M = fac.value
    return sum(c * e for c, e in zip(point, _lift_coefficients(fac))) % M


def crt_map_array(xs, fac: PrimeFactorization) -> np.ndarray:
    """Vectorised ``crt_map``: shape ``(len(xs), k)``."""
    fac.require_squarefree()
    xs = np.asarray(xs, dtype=np.int64)
    return xs[:, None] % np.asarray(fac.primes, dtype=np.int64)[None, :]


def crt_inverse_array(points, fac: PrimeFactorization) -> np.ndarray:
    """Vectorised ``crt_inverse``; exact while ``M * max(p) < 2**63``."""
    fac.require_squarefree()
    M = fac.value
    if M * max(fac.primes, default=1) >= 2**63:
        raise OverflowError(f"M = {M} too large for int64 lifting")
    points = np.asarray(points, dtype=np.int64)
    if points.ndim == 1:
        points = points.reshape(-1, len(fac.primes))
    coef = np.asarray([e % M for e in _lift_coefficients(fac)], dtype=np.int64)
    acc = np.zeros(len(points), dtype=np.int64)
    for i in range(len(fac.primes)):
        acc = (acc + points[:, i] * coef[i]) % M
    return acc


def class_to_subbox(cls: CongruenceClass, fac: PrimeFactorization) -> SubBox:
    fac.require_squarefree()
    M = fac.value
    if M % cls.modulus:
        raise ValueError(f"modulus {cls.modulus} does not divide M = {M}")
    fixed = {i: cls.residue % p for i, p in enumerate(fac.primes) if cls.modulus % p == 0}
    return SubBox(fac.box, fixed)


def subbox_to_class(subbox: SubBox, fac: PrimeFactorization) -> CongruenceClass:
    fac.require_squarefree()
    if subbox.box.radices != fac.primes:
        raise ValueError(f"sub-box radices {subbox.box.radices} do not match primes {fac.primes}")
    fixed = dict(subbox.fixed)
    m = prod(fac.primes[i] for i in fixed)
    # lift within the sub-factorization of m
    sub = PrimeFactorization(tuple(fac.primes[i] for i in sorted(fixed)),
                             (1,) * len(fixed))
    a = crt_inverse([fixed[i] for i in sorted(fixed)], sub) if fixed else 0
    return CongruenceClass(a, m)


def system_to_subboxes(system: CongruenceSystem, fac: PrimeFactorization | None = None):
    if fac is None:
        fac = factorize(system.lcm)
    return fac, [class_to_subbox(c, fac) for c in system.classes]


def system_cover_equivalence(system: CongruenceSystem) -> bool:
    """Self-test: the integer scan and the box scan must agree on coverage."""
    fac, subboxes = system_to_subboxes(system)
    return verify_cover(system).is_cover == box_cover_check(fac.box, subboxes).is_cover
