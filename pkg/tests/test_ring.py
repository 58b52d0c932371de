import cmath
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psdec.ring import (
    AbelianGroup,
    RingError,
    abelian_dual,
    additive_character,
    additive_group,
    is_pullback,
    make_ring,
    new_character_count,
    unit_group,
    val,
)

BACKENDS = ("zmod", "polymod")
SMALL = [(b, p, m) for b in BACKENDS for p in (2, 3, 5) for m in (1, 2, 3) if p**m <= 125]


@pytest.mark.parametrize("backend,p,m,size,units", [
    ("zmod", 3, 2, 9, 6),
    ("polymod", 3, 2, 9, 6),
    ("zmod", 2, 3, 8, 4),
    ("polymod", 5, 1, 5, 4),
])
def test_sizes(backend, p, m, size, units):
    ring = make_ring(backend, p, m)
    assert ring.size == size
    assert len(ring.units) == units == p ** (m - 1) * (p - 1)


def test_level_zero_ring_has_single_unit():
    ring = make_ring("zmod", 2, 0)
    assert list(ring.elements()) == [0]
    assert len(ring.units) == 1


@pytest.mark.parametrize("code,expected", [(0, 2), (6, 1), (5, 0), (3, 1)])
def test_val_in_z9(code, expected):
    ring = make_ring("zmod", 3, 2)
    assert val(ring.element(code)) == expected


def test_polymod_uses_truncated_polynomials():
    ring = make_ring("polymod", 2, 3)
    t = ring.element(ring.pi)
    assert (t + t).code == 0  # characteristic p
    assert val(t * t) == 2
    assert val(t * t * t) == 3
    z = make_ring("zmod", 2, 3).element(2)
    assert (z + z).code == 4


def test_non_prime_rejected():
    with pytest.raises(RingError):
        make_ring("zmod", 4, 1)


def test_inverse_of_non_unit_raises():
    ring = make_ring("polymod", 3, 2)
    with pytest.raises(RingError):
        ring.element(ring.pi).inverse()


@pytest.mark.parametrize("backend,p,m", SMALL)
def test_field_axioms_on_tables(backend, p, m):
    ring = make_ring(backend, p, m)
    els = list(ring.elements())
    for a, b in itertools.product(els, repeat=2):
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.mul(a, b) == ring.mul(b, a)
    for u in ring.units:
        assert ring.mul(u, ring.inv(u)) == ring.one
    assert len(ring.units) == sum(1 for a in els if val(ring.element(a)) == 0)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_ring_laws(params, a, b, c):
    ring = make_ring(*params)
    a, b, c = (ring.element(v) for v in (a, b, c))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ring.element(0)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.integers(0, 10**6))
def test_valuation_is_additive(params, a, b):
    ring = make_ring(*params)
    x, y = ring.element(a), ring.element(b)
    assert val(x * y) == min(ring.m, val(x) + val(y))
    assert val(x + y) >= min(val(x), val(y))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_additive_character_is_a_homomorphism(params, xi, a, b):
    ring = make_ring(*params)
    psi = additive_character(ring, xi)
    lhs = psi(ring.add(a % ring.size, b % ring.size))
    assert cmath.isclose(lhs, psi(a % ring.size) * psi(b % ring.size), abs_tol=1e-9)


@pytest.mark.parametrize("backend,p,m", SMALL)
def test_standard_character_is_primitive(backend, p, m):
    ring = make_ring(backend, p, m)
    # psi_xi is trivial only for xi = 0
    for xi in ring.elements():
        trivial = all(additive_character(ring, xi).angle(x) == 0 for x in ring.elements())
        assert trivial == (xi == 0)


@pytest.mark.parametrize("group,count", [
    (lambda: unit_group(make_ring("zmod", 3, 1)), 2),
    (lambda: additive_group(make_ring("zmod", 3, 2)), 9),
    (lambda: unit_group(make_ring("zmod", 2, 2)), 2),
    (lambda: unit_group(make_ring("zmod", 2, 3)), 4),
    (lambda: unit_group(make_ring("polymod", 2, 3)), 4),
    (lambda: additive_group(make_ring("polymod", 2, 3)), 8),
])
def test_dual_sizes(group, count):
    assert len(abelian_dual(group())) == count


@pytest.mark.parametrize("backend,p,m", [("zmod", 2, 3), ("polymod", 2, 3), ("zmod", 3, 2), ("polymod", 5, 2)])
def test_dual_orthogonality(backend, p, m):
    ring = make_ring(backend, p, m)
    for G in (unit_group(ring), additive_group(ring)):
        chars = abelian_dual(G).characters
        assert len({c.angles for c in chars}) == G.order
        for a, b in itertools.combinations_with_replacement(chars, 2):
            s = sum(a(g) * b(g).conjugate() for g in G.elements) / G.order
            assert cmath.isclose(s, 1 if a is b else 0, abs_tol=1e-9)
        for c in chars:
            for g, h in itertools.product(G.elements, repeat=2):
                assert c.angle(G.op(g, h)) == (c.angle(g) + c.angle(h)) % 1


def test_dual_rejects_non_abelian():
    els = tuple(itertools.permutations(range(3)))
    compose = lambda a, b: tuple(a[i] for i in b)  # noqa: E731
    with pytest.raises(ValueError):
        abelian_dual(AbelianGroup(els, compose, (0, 1, 2)))


def test_trivial_character_is_pullback():
    for m in (1, 2, 3):
        dual = abelian_dual(unit_group(make_ring("zmod", 3, m)))
        trivial = next(c for c in dual.characters if c.is_trivial)
        assert is_pullback(trivial)


def test_sign_character_of_f3_is_new():
    dual = abelian_dual(unit_group(make_ring("zmod", 3, 1)))
    sign = next(c for c in dual.characters if not c.is_trivial)
    assert not is_pullback(sign)


@pytest.mark.parametrize("backend", BACKENDS)
def test_additive_pullbacks_at_p3_m2(backend):
    dual = abelian_dual(additive_group(make_ring(backend, 3, 2)))
    assert sum(is_pullback(c) for c in dual.characters) == 3


@pytest.mark.parametrize("backend,p,m", [(b, p, m) for b in BACKENDS for p in (2, 3, 5) for m in (1, 2, 3) if p**m <= 27])
def test_new_character_counts(backend, p, m):
    ring = make_ring(backend, p, m)
    units = abelian_dual(unit_group(ring)).characters
    adds = abelian_dual(additive_group(ring)).characters
    assert sum(not is_pullback(c) for c in units) == new_character_count(p, m, True)
    assert sum(not is_pullback(c) for c in adds) == new_character_count(p, m, False)
    # new = all minus those of the previous level
    prev_units = 1 if m == 1 else p ** (m - 2) * (p - 1)
    assert new_character_count(p, m, True) == len(units) - prev_units
    assert new_character_count(p, m, False) == len(adds) - p ** (m - 1)
