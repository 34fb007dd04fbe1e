"""DNF expressions as subcube covers of the Boolean cube ``{0,1}^n``.

Vertex encoding: vertex ``v`` is the integer whose bit ``i - 1`` is the value
of variable ``x_i`` (variable 1 is the least significant bit).  A point set
is stored packed, as a Python integer with bit ``v`` set iff ``v`` is a member.

A term with support ``S`` and signs ``j`` is the subcube
``{x : x_i = j_i for i in S}`` of dimension ``n - |S|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .boxcover import ComparisonMode
from .errors import CapacityError, ContractViolation, ParseError, check_points

MAX_ENUMERATION_N = 3


def check_dimension(n):
    if n < 0:
        raise ValueError(f"dimension must be non-negative, got {n}")
    check_points(1 << n, f"{n}-cube")


@lru_cache(maxsize=1 << 16)
def subcube_mask(n: int, care: int, value: int) -> int:
    """Packed membership of ``{v : v & care == value}`` in the n-cube."""
    mask = 1
    for i in range(n):
        shift = 1 << i
        if not care >> i & 1:
            mask |= mask << shift
        elif value >> i & 1:
            mask <<= shift
    return mask


@dataclass(frozen=True)
class Term:
    """Conjunction over ``n`` variables; ``support`` is 1-based and sorted."""

    n: int
    support: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.support) != len(self.signs):
            raise ValueError("support and signs must have the same length")
        pairs = sorted(zip((int(i) for i in self.support), (int(s) for s in self.signs)))
        support = tuple(i for i, _ in pairs)
        if len(set(support)) != len(support):
            raise ValueError(f"variable repeated in support {support}")
        for i, s in pairs:
            if not 1 <= i <= self.n:
                raise ValueError(f"variable x{i} outside 1..{self.n}")
            if s not in (0, 1):
                raise ValueError(f"sign must be 0 or 1, got {s}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "signs", tuple(s for _, s in pairs))

    @classmethod
    def from_literals(cls, n, literals: Mapping[int, int]):
        """``{variable: sign}`` -> Term."""
        items = sorted(literals.items())
        return cls(n, tuple(i for i, _ in items), tuple(s for _, s in items))

    @classmethod
    def from_masks(cls, n, care, value):
        support = tuple(i + 1 for i in range(n) if care >> i & 1)
        return cls(n, support, tuple(value >> (i - 1) & 1 for i in support))

    @property
    def size(self):
        return len(self.support)

    @property
    def care(self):
        return sum(1 << (i - 1) for i in self.support)

    @property
    def value(self):
        return sum(s << (i - 1) for i, s in zip(self.support, self.signs))

    def key(self):
        """Canonical order: size, then support, then signs (all lexicographic)."""
        return (self.size, self.support, self.signs)

    def disjoint(self, other):
        # subcubes are disjoint iff they disagree on a shared variable
        return bool(self.care & other.care & (self.value ^ other.value))

    def evaluate(self, assignment: Sequence[int]) -> bool:
        """Truth value at ``assignment`` (``assignment[i-1]`` is ``x_i``)."""
        return all(assignment[i - 1] == s for i, s in zip(self.support, self.signs))

    def mask(self):
        return subcube_mask(self.n, self.care, self.value)

    def __str__(self):
        if not self.support:
            return "1"
        return " & ".join(("" if s else "!") + f"x{i}" for i, s in zip(self.support, self.signs))


@dataclass(frozen=True)
class DnfExpression:
    n: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if t.n != self.n:
                raise ValueError(f"term {t} has dimension {t.n}, expected {self.n}")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def sorted(self):
        return DnfExpression(self.n, tuple(sorted(self.terms, key=Term.key)))

    def key(self):
        return tuple(t.key() for t in sorted(self.terms, key=Term.key))

    @property
    def min_size(self):
        return min((t.size for t in self.terms), default=None)

    def to_json(self):
        return {
            "n": self.n,
            "terms": [{"support": list(t.support), "signs": list(t.signs)} for t in self.terms],
        }

    @classmethod
    def from_json(cls, obj):
        n = obj["n"]
        return cls(n, tuple(Term(n, tuple(t["support"]), tuple(t["signs"])) for t in obj["terms"]))

    def __str__(self):
        return " | ".join(f"({t})" for t in self.terms) if self.terms else "0"


class PointSet:
    """Subset of the ``2^n`` vertices, packed into an integer."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        check_dimension(n)
        if bits < 0 or bits >> (1 << n):
            raise ValueError("membership bits outside the cube")
        self.n = n
        self.bits = bits

    @classmethod
    def full(cls, n):
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def from_vertices(cls, n, vertices: Iterable[int]):
        bits = 0
        for v in vertices:
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def from_array(cls, array):
        array = np.asarray(array, dtype=bool).ravel()
        n = int(array.size).bit_length() - 1
        if array.size != 1 << n:
            raise ValueError(f"array length {array.size} is not a power of two")
        packed = np.packbits(array, bitorder="little").tobytes()
        return cls(n, int.from_bytes(packed, "little"))

    def to_array(self):
        size = 1 << self.n
        raw = self.bits.to_bytes((size + 7) // 8, "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size].astype(bool)

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, v):
        if not isinstance(v, int):
            v = sum(int(b) << i for i, b in enumerate(v))
        return bool(self.bits >> v & 1)

    def __iter__(self):
        return iter(int(v) for v in np.flatnonzero(self.to_array()))

    def __or__(self, other):
        return PointSet(self.n, self.bits | other.bits)

    def __and__(self, other):
        return PointSet(self.n, self.bits & other.bits)

    def __eq__(self, other):
        return isinstance(other, PointSet) and (self.n, self.bits) == (other.n, other.bits)

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self):
        return f"PointSet(n={self.n}, count={len(self)})"


def vertex_tuple(v, n):
    return tuple(v >> i & 1 for i in range(n))


def term_points(term: Term) -> PointSet:
    check_dimension(term.n)
    return PointSet(term.n, term.mask())


def dnf_coverage(dnf: DnfExpression) -> tuple[PointSet, int]:
    check_dimension(dnf.n)
    bits = 0
    for t in dnf.terms:
        bits |= t.mask()
    cover = PointSet(dnf.n, bits)
    return cover, (1 << dnf.n) - len(cover)


def is_tautology(dnf: DnfExpression) -> bool:
    return dnf_coverage(dnf)[1] == 0


def is_exact_dnf(dnf: DnfExpression) -> bool:
    ts = dnf.terms
    return all(ts[i].disjoint(ts[j]) for i in range(len(ts)) for j in range(i + 1, len(ts)))


def is_distinct_dnf(dnf: DnfExpression) -> bool:
    supports = [t.support for t in dnf.terms]
    return len(set(supports)) == len(supports)


def canonical_dnf(truth_set: PointSet) -> DnfExpression:
    """One full-support term per member vertex."""
    n = truth_set.n
    full = tuple(range(1, n + 1))
    return DnfExpression(n, tuple(Term(n, full, vertex_tuple(v, n)) for v in truth_set))


def pigeonhole_tautology(n: int, t: int) -> DnfExpression:
    """All positive ``t``-conjunctions plus all negated ``(n-t)``-conjunctions.

    Every vertex has at least ``t`` ones or at least ``n - t`` zeros, so this
    is a tautology; supports are distinct as long as ``t != n - t``.
    """
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= n, got t={t}, n={n}")
    if 2 * t == n:
        raise ValueError(f"t = n/2 = {t} makes the positive and negated supports collide")
    pos = [Term(n, s, (1,) * t) for s in combinations(range(1, n + 1), t)]
    neg = [Term(n, s, (0,) * (n - t)) for s in combinations(range(1, n + 1), n - t)]
    return DnfExpression(n, tuple(pos + neg))


def pigeonhole_min_size(n):
    """Largest minimum term size any valid pigeonhole construction reaches, or None."""
    return max((min(t, n - t) for t in range(1, n + 1) if 2 * t != n), default=None)


# -- density bounds -----------------------------------------------------------

def tail_A(n, k):
    """``sum_{i=k}^{n} C(n, i) / 2^i``."""
    return sum((Fraction(comb(n, i), 2**i) for i in range(k, n + 1)), Fraction(0))


def tail_B(n, m):
    return Fraction(comb(n, m), 2**m)


def density_bound_A(n: int, mode=ComparisonMode.WEAK) -> int:
    """Largest ``k`` with ``sum_{i>=k} C(n,i)/2^i`` clearing 1; 0 if none does."""
    mode = ComparisonMode.coerce(mode)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    for k in range(n, -1, -1):
        if mode.clears(tail_A(n, k)):
            return k
    return 0


def density_bound_B(n: int, mode=ComparisonMode.WEAK) -> int:
    """Largest ``m`` with ``C(n,m)/2^m`` clearing 1; 0 if none does."""
    mode = ComparisonMode.coerce(mode)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    for m in range(n, -1, -1):
        if mode.clears(tail_B(n, m)):
            return m
    return 0


@dataclass(frozen=True)
class BoundTable:
    kind: str
    mode: ComparisonMode
    values: tuple[int, ...]
    tails: tuple[Fraction, ...]

    def __getitem__(self, n):
        return self.values[n - 1]

    def rows(self):
        return [(n, v, t) for n, (v, t) in enumerate(zip(self.values, self.tails), start=1)]


def bound_table(kind: str, max_n: int, mode=ComparisonMode.WEAK) -> BoundTable:
    """Rows ``n = 1..max_n`` with the bound and the exact density value at it."""
    mode = ComparisonMode.coerce(mode)
    kind = kind.upper()
    if kind == "A":
        bound, tail = density_bound_A, tail_A
    elif kind == "B":
        bound, tail = density_bound_B, tail_B
    else:
        raise ValueError(f"table kind must be A or B, got {kind!r}")
    values = tuple(bound(n, mode) for n in range(1, max_n + 1))
    tails = tuple(tail(n, v) for n, v in enumerate(values, start=1))
    return BoundTable(kind, mode, values, tails)


# -- exact tautologies ----------------------------------------------------------

class MndrResult(NamedTuple):
    max_size: int
    multiplicity: int
    holds: bool
    degenerate: str | None = None


def boolean_mndr_check(dnf: DnfExpression) -> MndrResult:
    """In an exact tautology, the largest term size must occur at least twice.

    The one-term tautology (the empty conjunction) has nothing to pair with;
    it is reported as holding with ``degenerate="single-term"``.
    """
    if not (is_exact_dnf(dnf) and is_tautology(dnf)):
        raise ContractViolation("boolean MNDR check needs an exact DNF tautology")
    sizes = [t.size for t in dnf.terms]
    top = max(sizes)
    mult = sizes.count(top)
    if len(sizes) == 1:
        return MndrResult(top, mult, True, "single-term")
    return MndrResult(top, mult, mult >= 2)


def all_terms(n):
    """Every term over ``n`` variables (``3^n`` of them), in canonical order."""
    out = []
    for size in range(n + 1):
        for support in combinations(range(1, n + 1), size):
            for signs in np.ndindex(*(2,) * size):
                out.append(Term(n, support, tuple(int(s) for s in signs)))
    return out


def enumerate_exact_tautologies(n: int) -> list[DnfExpression]:
    """Every partition of the n-cube into subcubes, ``n <= 3``.

    Branches on the block containing the lowest uncovered vertex, so each
    partition is produced exactly once.
    """
    if n > MAX_ENUMERATION_N:
        raise CapacityError(f"exhaustive enumeration supports n <= {MAX_ENUMERATION_N}, got {n}")
    terms = [(t, t.mask()) for t in all_terms(n)]
    full = (1 << (1 << n)) - 1
    found = []

    def extend(covered, chosen):
        if covered == full:
            found.append(DnfExpression(n, tuple(sorted(chosen, key=Term.key))))
            return
        free = ~covered & full
        lowest = free & -free
        for t, mask in terms:
            if mask & lowest and not mask & covered:
                chosen.append(t)
                extend(covered | mask, chosen)
                chosen.pop()

    extend(0, [])
    found.sort(key=DnfExpression.key)
    return found


# -- text format ----------------------------------------------------------------

def parse_dnf(text: str) -> DnfExpression:
    """Parse ``n = <dim>`` followed by one term per line (``!x1 & x3``; ``1`` is the empty term)."""
    n = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            key, eq, val = line.partition("=")
            if not eq or key.strip() != "n":
                raise ParseError("first line must be 'n = <dim>'", lineno)
            try:
                n = int(val)
            except ValueError:
                raise ParseError(f"bad dimension {val.strip()!r}", lineno) from None
            if n < 0:
                raise ParseError(f"dimension must be non-negative, got {n}", lineno)
            continue
        if line == "1":
            terms.append(Term(n, (), ()))
            continue
        literals = {}
        for lit in line.split("&"):
            lit = lit.strip()
            sign = 1
            if lit.startswith("!"):
                sign, lit = 0, lit[1:]
            if not lit.startswith("x") or not lit[1:].isdigit():
                raise ParseError(f"bad literal {lit!r}", lineno)
            k = int(lit[1:])
            if not 1 <= k <= n:
                raise ParseError(f"variable x{k} outside 1..{n}", lineno)
            if k in literals:
                raise ParseError(f"variable x{k} repeated in a term", lineno)
            literals[k] = sign
        terms.append(Term.from_literals(n, literals))
    if n is None:
        raise ParseError("missing 'n = <dim>' header")
    return DnfExpression(n, tuple(terms))


def format_dnf(dnf: DnfExpression) -> str:
    return f"n = {dnf.n}\n" + "".join(f"{t}\n" for t in dnf.terms)
