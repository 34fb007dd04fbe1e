from itertools import combinations, product
from math import prod

import numpy as np
import pytest

from cubecover.boxcover import Box, SubBox
from cubecover.congruence import CongruenceClass, CongruenceSystem
from cubecover.crt import (
    PrimeFactorization,
    class_to_subbox,
    crt_inverse,
    crt_inverse_array,
    crt_map,
    crt_map_array,
    factorize,
    subbox_to_class,
    system_cover_equivalence,
)
from cubecover.errors import UnsupportedCase

F30 = factorize(30)


def divisors(M):
    return [d for d in range(1, M + 1) if M % d == 0]


def test_factorize():
    assert factorize(30) == PrimeFactorization((2, 3, 5), (1, 1, 1))
    assert factorize(12) == PrimeFactorization((2, 3), (2, 1))
    assert factorize(1) == PrimeFactorization((), ())
    assert factorize(97) == PrimeFactorization((97,), (1,))
    for M in range(1, 2000):
        fac = factorize(M)
        assert fac.value == M
        assert list(fac.primes) == sorted(set(fac.primes))
        for p in fac.primes:
            assert all(p % d for d in range(2, int(p**0.5) + 1))


def test_worked_example():
    assert crt_map(7, F30) == (1, 1, 2)
    assert crt_inverse((1, 1, 2), F30) == 7
    assert crt_map(0, F30) == (0, 0, 0)
    assert crt_inverse((0, 0, 0), F30) == 0


def test_roundtrip_30():
    points = [crt_map(x, F30) for x in range(30)]
    assert sorted(points) == sorted(product(range(2), range(3), range(5)))
    assert [crt_inverse(p, F30) for p in points] == list(range(30))


def test_class_to_subbox_worked_example():
    sb = class_to_subbox(CongruenceClass(7, 10), F30)
    assert sb.box == Box((2, 3, 5))
    assert dict(sb.fixed) == {0: 1, 2: 2}
    assert sb.dimension == 1 and sb.point_count == 3
    assert subbox_to_class(sb, F30) == CongruenceClass(7, 10)


def test_class_to_subbox_edges():
    assert class_to_subbox(CongruenceClass(0, 1), F30).fixed == ()
    assert dict(class_to_subbox(CongruenceClass(1, 30), F30).fixed) == {0: 1, 1: 1, 2: 1}
    with pytest.raises(ValueError):
        class_to_subbox(CongruenceClass(0, 7), F30)
    assert subbox_to_class(SubBox(Box((2, 3, 5)), {}), F30) == CongruenceClass(0, 1)


def test_all_classes_mod_30_roundtrip_and_membership():
    cases = 0
    for m in divisors(30):
        for a in range(m):
            cls = CongruenceClass(a, m)
            sb = class_to_subbox(cls, F30)
            assert subbox_to_class(sb, F30) == cls
            members = {x for x in range(30) if x in cls}
            assert len(members) == 30 // m == sb.point_count
            assert members == {x for x in range(30) if crt_map(x, F30) in sb}
            cases += 1
    assert cases == 72


def test_non_squarefree_rejected():
    fac = factorize(12)
    with pytest.raises(UnsupportedCase, match="2\\^2"):
        crt_map(5, fac)
    with pytest.raises(UnsupportedCase):
        class_to_subbox(CongruenceClass(1, 4), fac)
    erdos = CongruenceSystem.of([(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)])
    with pytest.raises(UnsupportedCase):
        system_cover_equivalence(erdos)


def test_vectorised_matches_scalar():
    for M in (1, 2, 6, 30, 210, 2 * 3 * 7 * 11):
        fac = factorize(M)
        xs = np.arange(M)
        pts = crt_map_array(xs, fac)
        assert [tuple(map(int, p)) for p in pts] == [crt_map(x, fac) for x in range(M)]
        assert np.array_equal(crt_inverse_array(pts, fac), xs)


def test_equivalence_small():
    assert system_cover_equivalence(CongruenceSystem.of([(0, 2), (1, 2)]))
    assert system_cover_equivalence(CongruenceSystem.of([(0, 1)]))


def test_equivalence_all_small_systems_over_30():
    classes = [(a, m) for m in divisors(30) for a in range(m)]
    count = 0
    for r in (1, 2, 3):
        for combo in combinations(classes, r):
            system = CongruenceSystem.of(combo)
            if 30 % system.lcm == 0 and system.lcm > 0:
                assert system_cover_equivalence(system)
                count += 1
    assert count == sum(1 for r in (1, 2, 3) for _ in combinations(classes, r))


def test_subbox_json_roundtrip():
    sb = class_to_subbox(CongruenceClass(7, 10), F30)
    js = sb.to_json()
    assert js == {"radices": [2, 3, 5], "fixed": {"0": 1, "2": 2}}
    assert SubBox.from_json(js) == sb


def test_point_counts_match_class_sizes():
    fac = factorize(2 * 3 * 5 * 7)
    for m in divisors(fac.value):
        sb = class_to_subbox(CongruenceClass(1, m), fac)
        assert sb.point_count == fac.value // m == prod(p for p in fac.primes if m % p)
