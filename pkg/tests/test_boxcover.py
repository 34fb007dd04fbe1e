import math
from fractions import Fraction
from itertools import combinations, product
from math import comb, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubecover.boolean import density_bound_A
from cubecover.boxcover import (
    Box,
    ComparisonMode,
    SubBox,
    box_cover_check,
    elementary_symmetric,
    format_box_file,
    max_feasible_codimension,
    parse_box_file,
    reciprocal_diagnostics,
    subbox_family,
    symmetric_tail,
)
from cubecover.congruence import CongruenceClass
from cubecover.crt import class_to_subbox, factorize
from cubecover.errors import CapacityError, ParseError


def brute_uncovered(box, subboxes):
    return sum(
        1 for pt in product(*(range(a) for a in box.radices))
        if not any(all(pt[i] == v for i, v in sb.fixed) for sb in subboxes)
    )


def brute_e(values, j):
    return sum((prod(c) for c in combinations(values, j)), Fraction(0))


def test_box_validation():
    with pytest.raises(ValueError):
        Box((2, 1))
    b = Box((2, 3))
    with pytest.raises(ValueError):
        SubBox(b, {1: 3})
    with pytest.raises(ValueError):
        SubBox(b, {2: 0})


def test_pigeonhole_transport():
    b = Box((2, 2))
    subs = [SubBox(b, {0: 1}), SubBox(b, {1: 1}), SubBox(b, {0: 0, 1: 0})]
    r = box_cover_check(b, subs)
    assert r.is_cover and r.non_parallel and r.min_fixed == 1


def test_class_7_mod_10_in_box_30():
    sb = class_to_subbox(CongruenceClass(7, 10), factorize(30))
    r = box_cover_check(Box((2, 3, 5)), [sb])
    assert r.uncovered_count == 27


def test_empty_cover():
    r = box_cover_check(Box((2, 3, 4)), [])
    assert r.uncovered_count == 24 and r.min_fixed is None and not r.is_cover


def test_parallel_violations():
    b = Box((3, 3))
    subs = [SubBox(b, {0: v}) for v in range(3)]
    r = box_cover_check(b, subs)
    assert r.is_cover
    assert r.parallel_violations == [(0, 1), (0, 2), (1, 2)]


boxes = st.lists(st.integers(2, 4), min_size=1, max_size=4).map(Box)


@st.composite
def box_instances(draw):
    box = draw(boxes)
    subs = []
    for _ in range(draw(st.integers(0, 6))):
        support = draw(st.sets(st.integers(0, box.n - 1), max_size=box.n))
        subs.append(SubBox(box, {i: draw(st.integers(0, box.radices[i] - 1)) for i in support}))
    return box, subs


@given(box_instances())
@settings(max_examples=200, deadline=None)
def test_scan_matches_brute_force(inst):
    box, subs = inst
    r = box_cover_check(box, subs)
    assert r.uncovered_count == brute_uncovered(box, subs)
    assert r.is_cover == (r.uncovered_count == 0)


@given(box_instances())
@settings(max_examples=200, deadline=None)
def test_density_necessity_on_found_covers(inst):
    box, subs = inst
    r = box_cover_check(box, subs)
    if r.is_cover and r.non_parallel and r.min_fixed is not None:
        assert symmetric_tail(box, r.min_fixed, "weak")[1]


def test_symmetric_tail_examples():
    assert symmetric_tail(Box((2, 2, 2, 2)), 2) == (Fraction(33, 16), True)
    assert symmetric_tail(Box((2, 3, 5)), 2) == (Fraction(11, 30), False)
    value, ok = symmetric_tail(Box((2, 3, 5)), 0)
    assert value == Fraction(3, 2) * Fraction(4, 3) * Fraction(6, 5) and ok


def test_max_feasible_codimension_examples():
    assert max_feasible_codimension(Box([2] * 14)) == 10
    assert max_feasible_codimension(Box((2, 3, 5))) == 1
    assert symmetric_tail(Box((2, 3, 5)), 1)[0] == Fraction(42, 30)
    for k in (3, 4, 10):
        assert max_feasible_codimension(Box((k,))) == 0


@pytest.mark.parametrize("n", range(0, 13))
def test_elementary_symmetric_matches_enumeration(n):
    values = [Fraction(1, a) for a in range(2, 2 + n)]
    e = elementary_symmetric(values)
    assert e == [brute_e(values, j) for j in range(n + 1)]


@pytest.mark.parametrize("n", range(1, 16))
def test_binomial_specialisation(n):
    for m in range(n + 1):
        expected = sum(Fraction(comb(n, i), 2**i) for i in range(m, n + 1))
        assert symmetric_tail(Box([2] * n), m)[0] == expected
    assert max_feasible_codimension(Box([2] * n)) == density_bound_A(n)
    assert max_feasible_codimension(Box([2] * n), "strict") == density_bound_A(n, "strict")


def test_modes():
    # [2, 2] at m=1: e1 + e2 = 1 + 1/4 clears 1 either way; [2] at m=1 is 1/2
    assert ComparisonMode.WEAK.clears(Fraction(1))
    assert not ComparisonMode.STRICT.clears(Fraction(1))
    assert ComparisonMode.coerce("Strict") is ComparisonMode.STRICT


def test_reciprocal_diagnostics():
    assert reciprocal_diagnostics([2, 2, 2, 2]) == (Fraction(2), Fraction(81, 16))
    assert reciprocal_diagnostics([]) == (Fraction(0), Fraction(1))
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23]
    s, p = reciprocal_diagnostics(primes)
    assert s == Fraction(334406399, 223092870)
    assert abs(float(s) - math.fsum(1 / q for q in primes)) < 1e-12
    assert p == prod(Fraction(q + 1, q) for q in primes)


def test_subbox_family_covers_box():
    box = Box((2, 3))
    fam = list(subbox_family(box, 1))
    assert len(fam) == 5
    assert box_cover_check(box, [s for s in fam if s.support == {1}]).is_cover


def test_point_cap(monkeypatch):
    monkeypatch.setenv("CUBECOVER_POINT_CAP", "100")
    with pytest.raises(CapacityError):
        box_cover_check(Box((11, 11)), [])
    box_cover_check(Box((10, 10)), [])


def test_box_file_roundtrip():
    text = "box: 2 3 5\n# class 7 mod 10\nfix 1=1 3=2\nfix\n"
    box, subs = parse_box_file(text)
    assert box == Box((2, 3, 5))
    assert dict(subs[0].fixed) == {0: 1, 2: 2}
    assert subs[1].fixed == ()
    assert parse_box_file(format_box_file(box, subs)) == (box, subs)


@pytest.mark.parametrize("text, line", [
    ("fix 1=1\n", 1),
    ("box: 2 3\nfix 3=0\n", 2),
    ("box: 2 3\nfix 1=2\n", 2),
    ("box: 2 3\nfix 0=0\n", 2),
    ("box: 2 3\nfix 1\n", 2),
    ("box: 2 1\n", 1),
])
def test_box_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_box_file(text)
    assert exc.value.lineno == line
