"""Integer covering systems: residue classes, verification and structure checks.

A system ``{a_i (mod m_i)}`` covers the integers iff it covers the window
``[0, M)`` with ``M = lcm(m_1, ..., m_N)``, so every check here reduces to a
finite scan of that window.  The scan is exponential in the size of the input
(the number of digits of the moduli), which is why ``M`` is capped.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DEFAULT_LCM_CAP, CapacityError, ContractViolation, DegenerateError, ParseError

# window chunk for the coverage scan; bounds peak memory of the count buffer
SCAN_CHUNK = 1 << 22
JSON_UNCOVERED_LIMIT = 1000


@dataclass(frozen=True, order=True)
class CongruenceClass:
    """The residue class ``residue (mod modulus)``; residue is reduced on construction."""

    residue: int
    modulus: int

    def __post_init__(self):
        if int(self.modulus) < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "modulus", int(self.modulus))
        object.__setattr__(self, "residue", int(self.residue) % self.modulus)

    def __contains__(self, x):
        return x % self.modulus == self.residue

    def intersects(self, other):
        # a(m) and b(n) meet iff a = b (mod gcd(m, n))
        g = math.gcd(self.modulus, other.modulus)
        return (self.residue - other.residue) % g == 0

    def __str__(self):
        return f"{self.residue} mod {self.modulus}"


def _lcm_checked(moduli, cap):
    m = 1
    for q in moduli:
        m = math.lcm(m, q)
    if cap is not None and m > cap:
        raise CapacityError(
            f"lcm of the moduli is {m}, which needs {m.bit_length()} bits; "
            f"the verification cap is {cap} ({(cap).bit_length() - 1} bits)"
        )
    return m


@dataclass(frozen=True)
class CongruenceSystem:
    """An ordered, non-empty list of residue classes.

    ``lcm_cap`` bounds the verification window; pass ``None`` to disable it.
    """

    classes: tuple[CongruenceClass, ...]
    lcm_cap: int | None = field(default=DEFAULT_LCM_CAP, compare=False)

    def __post_init__(self):
        classes = tuple(
            c if isinstance(c, CongruenceClass) else CongruenceClass(*c) for c in self.classes
        )
        if not classes:
            raise ValueError("a congruence system needs at least one class")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "lcm", _lcm_checked((c.modulus for c in classes), self.lcm_cap))

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]], lcm_cap=DEFAULT_LCM_CAP):
        """Build from ``(residue, modulus)`` pairs."""
        return cls(tuple(CongruenceClass(a, m) for a, m in pairs), lcm_cap=lcm_cap)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    @property
    def moduli(self):
        return [c.modulus for c in self.classes]

    def duplicate_classes(self):
        """Index pairs ``(i, j)``, ``i < j``, of identical classes."""
        seen = {}
        dups = []
        for j, c in enumerate(self.classes):
            for i in seen.get(c, ()):
                dups.append((i, j))
            seen.setdefault(c, []).append(j)
        return dups

    def __str__(self):
        return "{" + ", ".join(f"{c.residue}({c.modulus})" for c in self.classes) + "}"


@dataclass(frozen=True)
class CoverReport:
    is_cover: bool
    lcm: int
    uncovered: np.ndarray
    multiplicity_histogram: dict[int, int]
    duplicate_classes: list[tuple[int, int]] = field(default_factory=list)

    @property
    def uncovered_total(self):
        return int(self.uncovered.size)

    def to_json(self, limit=JSON_UNCOVERED_LIMIT):
        return {
            "is_cover": self.is_cover,
            "lcm": self.lcm,
            "uncovered": [int(x) for x in self.uncovered[:limit]],
            "uncovered_total": self.uncovered_total,
            "multiplicity_histogram": {
                str(k): v for k, v in sorted(self.multiplicity_histogram.items())
            },
            "duplicate_classes": [list(p) for p in self.duplicate_classes],
        }


def coverage_counts(system, lo=0, hi=None):
    """Number of classes containing each integer of ``[lo, hi)``."""
    if hi is None:
        hi = system.lcm
    width = hi - lo
    dtype = np.uint16 if len(system) < 2**16 else np.uint32
    counts = np.zeros(width, dtype=dtype)
    for c in system.classes:
        start = (c.residue - lo) % c.modulus
        counts[start::c.modulus] += 1
    return counts


def verify_cover(system: CongruenceSystem, chunk: int = SCAN_CHUNK) -> CoverReport:
    """Scan ``[0, lcm)`` and report uncovered residues and the multiplicity profile."""
    M = system.lcm
    hist = Counter()
    uncovered = []
    for lo in range(0, M, chunk):
        hi = min(M, lo + chunk)
        counts = coverage_counts(system, lo, hi)
        for k, v in enumerate(np.bincount(counts)):
            if v:
                hist[k] += int(v)
        holes = np.flatnonzero(counts == 0)
        if holes.size:
            uncovered.append(holes.astype(np.int64) + lo)
    holes = np.concatenate(uncovered) if uncovered else np.zeros(0, dtype=np.int64)
    return CoverReport(
        is_cover=holes.size == 0,
        lcm=M,
        uncovered=holes,
        multiplicity_histogram=dict(hist),
        duplicate_classes=system.duplicate_classes(),
    )


def is_cover(system):
    return verify_cover(system).is_cover


def is_exact(system: CongruenceSystem) -> bool:
    """True iff the classes are pairwise disjoint."""
    cs = system.classes
    return not any(cs[i].intersects(cs[j]) for i in range(len(cs)) for j in range(i + 1, len(cs)))


def is_distinct(system: CongruenceSystem) -> bool:
    """True iff no modulus repeats (repeated identical classes count as a repeat)."""
    moduli = system.moduli
    return len(set(moduli)) == len(moduli)


def density(system):
    """``sum_i M / m_i``: the window points counted with multiplicity."""
    M = system.lcm
    return sum(M // c.modulus for c in system.classes)


def split_refine(system: CongruenceSystem, class_index: int, p: int) -> CongruenceSystem:
    """Replace ``a (mod m)`` by the ``p`` classes ``a + j*m (mod p*m)``, in place."""
    if p < 2:
        raise ValueError(f"split factor must be >= 2, got {p}")
    if not -len(system) <= class_index < len(system):
        raise IndexError(f"class index {class_index} out of range for {len(system)} classes")
    class_index %= len(system)
    c = system.classes[class_index]
    parts = tuple(CongruenceClass(c.residue + j * c.modulus, p * c.modulus) for j in range(p))
    classes = system.classes[:class_index] + parts + system.classes[class_index + 1:]
    return CongruenceSystem(classes, lcm_cap=system.lcm_cap)


def _require_exact_cover(system):
    if not is_exact(system):
        raise ContractViolation(f"system {system} is not exact")
    if not verify_cover(system).is_cover:
        raise ContractViolation(f"system {system} is not a covering system")


class TopModuli(NamedTuple):
    holds: bool
    largest: int
    second_largest: int | None
    degenerate: str | None


def top_moduli_check(system: CongruenceSystem) -> TopModuli:
    """For an exact covering system, test that the two largest moduli coincide.

    A one-class system (necessarily ``0 (mod 1)``) has no pair to compare and
    is reported as holding, with ``degenerate="single-class"``.
    """
    _require_exact_cover(system)
    moduli = sorted(system.moduli)
    if len(moduli) == 1:
        return TopModuli(True, moduli[0], None, "single-class")
    return TopModuli(moduli[-1] == moduli[-2], moduli[-1], moduli[-2], None)


def smallest_prime_factor(m):
    if m < 2:
        raise ValueError(f"{m} has no prime factor")
    if m % 2 == 0:
        return 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return d
        d += 2
    return m


class ZnamResult(NamedTuple):
    p: int
    multiplicity: int
    holds: bool


def znam_multiplicity_check(system: CongruenceSystem) -> ZnamResult:
    """Count how often the largest modulus occurs against the smallest prime of the lcm."""
    _require_exact_cover(system)
    if system.lcm == 1:
        raise DegenerateError("lcm is 1; the multiplicity bound needs a prime divisor")
    p = smallest_prime_factor(system.lcm)
    moduli = system.moduli
    mult = moduli.count(max(moduli))
    return ZnamResult(p, mult, mult >= p)


def random_exact_system(rng, steps, primes=(2, 3, 5, 7), lcm_cap=2**20):
    """Exact cover grown from ``0 (mod 1)`` by up to ``steps`` random splits.

    Splits that would push the lcm past ``lcm_cap`` are skipped.
    """
    system = CongruenceSystem.of([(0, 1)], lcm_cap=lcm_cap)
    for _ in range(steps):
        i = int(rng.integers(len(system)))
        p = int(rng.choice(primes))
        try:
            system = split_refine(system, i, p)
        except CapacityError:
            continue
    return system


# -- text format ------------------------------------------------------------

def parse_system(text: str, lcm_cap=DEFAULT_LCM_CAP) -> CongruenceSystem:
    """Parse lines of the form ``a mod m``; ``#`` lines and blank lines are skipped."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(" ")
        if len(parts) != 3 or parts[1] != "mod":
            raise ParseError(f"expected 'a mod m', got {raw!r}", lineno)
        try:
            a, m = int(parts[0]), int(parts[2])
        except ValueError:
            raise ParseError(f"non-integer field in {raw!r}", lineno) from None
        if a < 0:
            raise ParseError(f"residue must be non-negative, got {a}", lineno)
        if m < 1:
            raise ParseError(f"modulus must be >= 1, got {m}", lineno)
        pairs.append((a, m))
    if not pairs:
        raise ParseError("no congruence classes found")
    return CongruenceSystem.of(pairs, lcm_cap=lcm_cap)


def format_system(system: Sequence[CongruenceClass] | CongruenceSystem) -> str:
    return "".join(f"{c.residue} mod {c.modulus}\n" for c in system)
