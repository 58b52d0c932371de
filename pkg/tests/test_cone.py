import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from psdec import cone
from psdec.cone import ConePoint, NotInCone, Region


def brute_level(level):
    """Oracle: filter N_0^3 directly."""
    return sorted(
        ConePoint(a, b, level)
        for a, b in itertools.product(range(level + 1), repeat=2)
        if a <= level and b <= level <= a + b
    )


@pytest.mark.parametrize("c,expected", [
    ((1, 0, 1), (0, 0, 1)),
    ((2, 2, 3), (1, 1, 3)),
    ((4, 5, 6), (1, 3, 6)),
])
def test_invariants(c, expected):
    assert tuple(cone.invariants(c)) == expected


@pytest.mark.parametrize("c,reg", [
    ((2, 2, 3), Region.INTERIOR),
    ((2, 1, 2), Region.BOUNDARY),
    ((1, 1, 2), Region.BOUNDARY),
])
def test_region(c, reg):
    assert cone.region(c) is reg


@pytest.mark.parametrize("c", [(3, 0, 2), (1, 1, 3), (-1, 1, 0)])
def test_points_outside_cone_rejected(c):
    with pytest.raises(NotInCone):
        cone.invariants(c)
    with pytest.raises(NotInCone):
        cone.region(c)


def test_parse():
    assert ConePoint.parse("2, 3,4") == (2, 3, 4)
    with pytest.raises(NotInCone):
        ConePoint.parse("1,1,3")
    with pytest.raises(ValueError):
        ConePoint.parse("1,2")


@pytest.mark.parametrize("c,d,expected", [
    ((2, 3, 4), (3, 2, 4), True),
    ((5, 3, 6), (3, 5, 6), False),
    ((1, 2, 2), (2, 1, 2), False),
    ((0, 1, 1), (1, 0, 1), True),
])
def test_equivalent(c, d, expected):
    assert cone.equivalent(c, d) is expected


@pytest.mark.parametrize("args,size", [((0, 0, 2), 3), ((1, 2, 5), 1), ((1, 2, 3), 0)])
def test_class_size(args, size):
    assert cone.class_size(*args) == size


@pytest.mark.parametrize("args,count", [((0, 1, 2), 2), ((1, 1, 4), 1), ((0, 2, 2), 1)])
def test_count_classes(args, count):
    assert cone.count_classes_with_invariants(*args) == count


def test_enumerate_small_levels():
    assert cone.enumerate_level(0) == [(0, 0, 0)]
    assert cone.enumerate_level(1) == [(0, 1, 1), (1, 0, 1), (1, 1, 1)]
    assert len(cone.enumerate_level(2)) == 6


@pytest.mark.parametrize("level", range(9))
def test_enumeration_matches_filter(level):
    pts = cone.enumerate_level(level)
    assert pts == sorted(pts)
    assert pts == brute_level(level)
    assert len(pts) == (level + 1) * (level + 2) // 2


@pytest.mark.parametrize("level", range(9))
def test_equivalence_relation_axioms(level):
    pts = cone.enumerate_level(level)
    for c in pts:
        assert cone.equivalent(c, c)
    for c, d in itertools.product(pts, repeat=2):
        assert cone.equivalent(c, d) == cone.equivalent(d, c)
    for c, d, e in itertools.product(pts, repeat=3):
        if cone.equivalent(c, d) and cone.equivalent(d, e):
            assert cone.equivalent(c, e)


@pytest.mark.parametrize("level", range(9))
def test_interior_iff_mu_positive(level):
    for c in cone.enumerate_level(level):
        assert (cone.region(c) is Region.INTERIOR) == (cone.invariants(c).mu >= 1)


@pytest.mark.parametrize("level", range(9))
def test_invariant_triple_constraints(level):
    for c in cone.enumerate_level(level):
        mu, kappa, lam = cone.invariants(c)
        assert 0 <= mu <= kappa <= lam
        assert lam >= 3 * mu
        if kappa > mu:
            assert lam >= 2 * mu + kappa


@pytest.mark.parametrize("level", range(9))
def test_class_sizes_match_enumeration(level):
    classes = cone.classes_at_level(level)
    assert sum(len(k) for k in classes) == (level + 1) * (level + 2) // 2
    for k in classes:
        assert len(k) == cone.class_size(*cone.invariants(k[0]))
        assert cone.canonical_representative(k[0]) in k
    total = 0
    for mu, kappa in itertools.product(range(level + 1), repeat=2):
        n = cone.count_classes_with_invariants(mu, kappa, level)
        total += n * cone.class_size(mu, kappa, level)
    assert total == (level + 1) * (level + 2) // 2


@pytest.mark.parametrize("level", range(9))
def test_class_count_closed_behaviour(level):
    for mu in range(level + 1):
        for kappa in range(mu, level + 1):
            n = cone.count_classes_with_invariants(mu, kappa, level)
            if kappa == mu:
                expected = 1 if level >= 3 * mu else 0
            elif level > 2 * mu + kappa:
                expected = 2
            else:
                expected = 1 if level == 2 * mu + kappa else 0
            assert n == expected, (mu, kappa, level)


def test_halving_criterion():
    for x, y in itertools.product(range(1, 9), repeat=2):
        lo = min(x, y)
        for z in range(max(x, y), x + y):
            k = x + y - z
            if 0 < k < lo:
                inv = cone.invariants((x, y, z))
                assert (k <= lo // 2) == (inv.mu == inv.kappa)


@given(st.integers(0, 40), st.integers(0, 40), st.integers(0, 40))
def test_membership_matches_definition(a, b, c):
    assert cone.in_cone((a, b, c)) == (a <= c and b <= c <= a + b)


def test_canonical_representative():
    assert cone.canonical_representative((3, 2, 4)) == (2, 3, 4)
    assert cone.canonical_representative((5, 3, 6)) == (5, 3, 6)
    assert cone.canonical_representative((0, 1, 1)) == (0, 1, 1)
