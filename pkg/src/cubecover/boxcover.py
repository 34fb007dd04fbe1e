"""Covering a mixed-radix discrete box by non-parallel sub-boxes.

Coordinates are 0-based: coordinate ``i`` ranges over ``[0, a_i - 1]``.
Two sub-boxes are *parallel* when they fix the same set of coordinates.

The density test: a sub-box fixing the coordinate set ``S`` has
``prod_{i not in S} a_i`` points, so relative to the whole box it has weight
``prod_{i in S} 1/a_i``.  In a non-parallel cover each ``S`` is used at most
once, so a cover whose sub-boxes all fix at least ``m`` coordinates needs

    sum_{j >= m} e_j(1/a_1, ..., 1/a_n) >= 1

where ``e_j`` is the j-th elementary symmetric polynomial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Mapping, Sequence

import numpy as np

from .errors import ParseError, check_points


class ComparisonMode(enum.Enum):
    """How a density total is compared against 1."""

    WEAK = "weak"
    STRICT = "strict"

    def clears(self, value) -> bool:
        return value >= 1 if self is ComparisonMode.WEAK else value > 1

    @classmethod
    def coerce(cls, mode):
        if isinstance(mode, cls):
            return mode
        return cls(str(mode).lower())


@dataclass(frozen=True)
class Box:
    radices: tuple[int, ...]

    def __post_init__(self):
        radices = tuple(int(a) for a in self.radices)
        for a in radices:
            if a < 2:
                raise ValueError(f"every radix must be >= 2, got {a}")
        object.__setattr__(self, "radices", radices)

    @property
    def n(self):
        return len(self.radices)

    @property
    def size(self):
        return prod(self.radices)


@dataclass(frozen=True)
class SubBox:
    """Sub-box of ``box`` fixing coordinate ``i`` to ``v`` for each ``(i, v)`` in ``fixed``."""

    box: Box
    fixed: tuple[tuple[int, int], ...]

    def __post_init__(self):
        items = self.fixed.items() if isinstance(self.fixed, Mapping) else self.fixed
        fixed = tuple(sorted((int(i), int(v)) for i, v in items))
        seen = set()
        for i, v in fixed:
            if not 0 <= i < self.box.n:
                raise ValueError(f"coordinate {i} outside a {self.box.n}-dimensional box")
            if i in seen:
                raise ValueError(f"coordinate {i} fixed twice")
            seen.add(i)
            if not 0 <= v < self.box.radices[i]:
                raise ValueError(
                    f"value {v} out of range for coordinate {i} (radix {self.box.radices[i]})"
                )
        object.__setattr__(self, "fixed", fixed)

    @property
    def support(self):
        return frozenset(i for i, _ in self.fixed)

    @property
    def dimension(self):
        return self.box.n - len(self.fixed)

    @property
    def point_count(self):
        fixed = self.support
        return prod(a for i, a in enumerate(self.box.radices) if i not in fixed)

    def __contains__(self, point):
        return all(point[i] == v for i, v in self.fixed)

    def index(self):
        """Numpy index selecting this sub-box in an array of shape ``box.radices``."""
        fixed = dict(self.fixed)
        return tuple(fixed.get(i, slice(None)) for i in range(self.box.n))

    def to_json(self):
        return {"radices": list(self.box.radices), "fixed": {str(i): v for i, v in self.fixed}}

    @classmethod
    def from_json(cls, obj):
        return cls(Box(obj["radices"]), {int(i): v for i, v in obj["fixed"].items()})


@dataclass(frozen=True)
class BoxCoverReport:
    is_cover: bool
    uncovered_count: int
    parallel_violations: list[tuple[int, int]]
    min_fixed: int | None

    @property
    def non_parallel(self):
        return not self.parallel_violations

    def to_json(self):
        return {
            "is_cover": self.is_cover,
            "uncovered_count": self.uncovered_count,
            "parallel_violations": [list(p) for p in self.parallel_violations],
            "min_fixed": self.min_fixed,
            "non_parallel": self.non_parallel,
        }


def parallel_pairs(subboxes):
    pairs = []
    by_support = {}
    for j, sb in enumerate(subboxes):
        for i in by_support.get(sb.support, ()):
            pairs.append((i, j))
        by_support.setdefault(sb.support, []).append(j)
    return sorted(pairs)


def covered_array(box: Box, subboxes: Sequence[SubBox]) -> np.ndarray:
    """Boolean array of shape ``box.radices``; True where some sub-box covers the point."""
    check_points(box.size, "box")
    covered = np.zeros(box.radices, dtype=bool)
    for sb in subboxes:
        if sb.box != box:
            raise ValueError(f"sub-box belongs to {sb.box}, not {box}")
        covered[sb.index()] = True
    return covered


def box_cover_check(box: Box, subboxes: Sequence[SubBox]) -> BoxCoverReport:
    covered = covered_array(box, subboxes)
    uncovered = int(covered.size - np.count_nonzero(covered))
    return BoxCoverReport(
        is_cover=uncovered == 0,
        uncovered_count=uncovered,
        parallel_violations=parallel_pairs(subboxes),
        min_fixed=min((len(sb.fixed) for sb in subboxes), default=None),
    )


def elementary_symmetric(values: Sequence) -> list:
    """``[e_0, ..., e_n]`` of ``values`` by the standard one-pass recurrence.

    Exact when ``values`` are Fractions or ints.
    """
    e = [Fraction(1)] + [Fraction(0)] * len(values)
    for count, x in enumerate(values, start=1):
        for j in range(count, 0, -1):
            e[j] += e[j - 1] * x
    return e


def symmetric_tail(box: Box, m: int, mode=ComparisonMode.WEAK) -> tuple[Fraction, bool]:
    """``sum_{j=m}^{n} e_j(1/a_1, ..., 1/a_n)`` and whether it clears 1 under ``mode``."""
    mode = ComparisonMode.coerce(mode)
    if not 0 <= m <= box.n:
        raise ValueError(f"codimension {m} outside [0, {box.n}]")
    e = elementary_symmetric([Fraction(1, a) for a in box.radices])
    value = sum(e[m:], Fraction(0))
    return value, mode.clears(value)


def max_feasible_codimension(box: Box, mode=ComparisonMode.WEAK) -> int:
    """Largest ``m`` whose symmetric tail clears 1; 0 when none does."""
    mode = ComparisonMode.coerce(mode)
    e = elementary_symmetric([Fraction(1, a) for a in box.radices])
    tail = Fraction(0)
    for m in range(box.n, -1, -1):
        tail += e[m]
        if mode.clears(tail):
            return m
    return 0


def reciprocal_diagnostics(radices: Sequence[int]) -> tuple[Fraction, Fraction]:
    """``sum 1/a_i`` and ``prod (1 + 1/a_i)`` over a finite prefix, exactly."""
    s = sum((Fraction(1, a) for a in radices), Fraction(0))
    p = prod((1 + Fraction(1, a) for a in radices), start=Fraction(1))
    return s, p


def subbox_family(box: Box, m: int):
    """Every sub-box of ``box`` fixing exactly ``m`` coordinates (generator)."""
    for support in combinations(range(box.n), m):
        for values in np.ndindex(*(box.radices[i] for i in support)):
            yield SubBox(box, tuple(zip(support, values)))


# -- text format ------------------------------------------------------------

def parse_box_file(text: str) -> tuple[Box, list[SubBox]]:
    """Parse ``box: a1 a2 ...`` followed by ``fix i=v ...`` lines (1-based indices)."""
    box = None
    subboxes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if box is None:
            if not line.startswith("box:"):
                raise ParseError("first line must be 'box: a1 a2 ... an'", lineno)
            try:
                box = Box(tuple(int(tok) for tok in line[4:].split()))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        tokens = line.split()
        if tokens[0] != "fix":
            raise ParseError(f"expected 'fix i=v ...', got {raw!r}", lineno)
        fixed = {}
        for tok in tokens[1:]:
            i, eq, v = tok.partition("=")
            if not eq:
                raise ParseError(f"expected i=v, got {tok!r}", lineno)
            try:
                fixed[int(i) - 1] = int(v)
            except ValueError:
                raise ParseError(f"non-integer in {tok!r}", lineno) from None
            if int(i) < 1:
                raise ParseError(f"coordinate indices are 1-based, got {i}", lineno)
        try:
            subboxes.append(SubBox(box, fixed))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if box is None:
        raise ParseError("missing 'box:' header")
    return box, subboxes


def format_box_file(box: Box, subboxes: Sequence[SubBox]) -> str:
    lines = ["box: " + " ".join(map(str, box.radices))]
    for sb in subboxes:
        lines.append(" ".join(["fix"] + [f"{i + 1}={v}" for i, v in sb.fixed]).rstrip())
    return "\n".join(lines) + "\n"
