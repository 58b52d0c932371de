import itertools

import numpy as np
import pytest

from psdec.characters import (
    ClassFunction,
    FiniteGroup,
    NonIntegralError,
    NotASubgroup,
    conjugacy_classes,
    induce_character,
    inner_product,
    mackey_hom_dim,
    permutation_character,
    restrict,
)
from psdec.groups import SubgroupSpec
from psdec.spectral import setting


def symmetric_group(n):
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[i] for i in b)] for b in perms] for a in perms]
    return FiniteGroup.from_cayley_table(table, name=f"S{n}"), perms, index


def cyclic(n):
    return FiniteGroup.from_cayley_table([[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}")


@pytest.fixture(scope="module")
def s4():
    return symmetric_group(4)


@pytest.fixture(scope="module")
def e310():
    return setting(3, 1, 0)


def test_abelian_classes_are_singletons():
    G = cyclic(12)
    _, reps, sizes = conjugacy_classes(G)
    assert reps.size == 12 and set(sizes) == {1}


def test_symmetric_group_classes(s4):
    G = s4[0]
    assert sorted(G.class_sizes) == [1, 3, 6, 6, 8]
    assert G.class_sizes[G.class_index[G.identity]] == 1


@pytest.mark.parametrize("p,m,e", [(3, 1, 0), (2, 2, 0), (2, 2, 1), (3, 1, 1)])
def test_class_count_equals_commuting_pairs(p, m, e):
    G = setting(p, m, e).G
    assert G.class_sizes.sum() == G.order
    assert np.all(G.order % G.class_sizes == 0)
    # number of classes = |{(a, b) : ab = ba}| / |G|
    commuting = sum(int(np.count_nonzero(G.mul(G.all, g) == G.mul(g, G.all))) for g in range(G.order))
    assert commuting == G.num_classes * G.order


def test_e_at_p3_classes(e310):
    G = e310.G
    assert G.order == 108
    assert G.class_sizes.sum() == 108
    assert G.class_sizes[G.class_index[G.identity]] == 1


def test_basic_inner_products(s4):
    G = s4[0]
    triv, reg = ClassFunction.trivial(G), ClassFunction.regular(G)
    assert inner_product(triv, triv) == 1
    assert inner_product(reg, triv) == 1
    assert inner_product(reg, reg) == G.order


def test_non_integral_inner_product_raises(s4):
    G = s4[0]
    half = ClassFunction(G, 0.5 * np.ones(G.num_classes))
    with pytest.raises(NonIntegralError):
        inner_product(half, ClassFunction.trivial(G))


def test_permutation_character_extremes(s4):
    G = s4[0]
    assert permutation_character(G, G.subgroup(G.all)).allclose(ClassFunction.trivial(G))
    assert permutation_character(G, G.subgroup([G.identity])).allclose(ClassFunction.regular(G))


def test_induced_trivial_is_permutation_character(s4):
    G, perms, index = s4
    H = G.subgroup([index[p] for p in perms if p[3] == 3])
    ind = induce_character(H, np.ones(H.order))
    assert ind.allclose(permutation_character(G, H))
    assert ind.degree == 4
    # S4 acting on 4 points is 2-transitive: rank 2
    assert inner_product(ind, ind) == 2


def test_subgroup_closure_checked(s4):
    G, perms, index = s4
    with pytest.raises(NotASubgroup):
        G.subgroup([G.identity, index[(1, 0, 2, 3)], index[(0, 2, 1, 3)]])


def test_theta_coset_action_is_transitive(e310):
    G = e310.G
    theta = e310.subgroup(SubgroupSpec("Theta"))
    perm = permutation_character(G, theta)
    assert inner_product(perm, ClassFunction.trivial(G)) == 1
    assert perm.allclose(induce_character(theta, np.ones(theta.order)))


def test_induced_degree_from_theta(e310):
    at = e310.subgroup(SubgroupSpec("ATheta"))
    theta = e310.subgroup(SubgroupSpec("Theta"), parent=at)
    assert induce_character(theta, np.ones(theta.order), at).degree == 3**2


def _random_class_function(G, rng):
    return ClassFunction(G, rng.normal(size=G.num_classes) + 1j * rng.normal(size=G.num_classes))


@pytest.mark.parametrize("p,m,e", [(3, 1, 0), (2, 2, 1)])
def test_frobenius_reciprocity(p, m, e):
    s = setting(p, m, e)
    G = s.G
    rng = np.random.default_rng(3)
    for spec in (SubgroupSpec("ATheta"), SubgroupSpec("A"), SubgroupSpec("Q_r", r=s.r_minus(1))):
        H = s.subgroup(spec)
        for _ in range(20):
            chi = _random_class_function(H, rng).element_values()
            psi = _random_class_function(G, rng)
            lhs = np.sum(G.class_sizes * induce_character(H, chi).values * np.conj(psi.values)) / G.order
            rhs = np.sum(chi * np.conj(restrict(psi, H))) / H.order
            assert abs(lhs - rhs) < 1e-9


@pytest.mark.parametrize("p,m,e", [(3, 1, 0), (2, 2, 0), (3, 2, 1)])
def test_induction_in_stages(p, m, e):
    s = setting(p, m, e)
    at = s.subgroup(SubgroupSpec("ATheta"))
    a = s.subgroup(SubgroupSpec("A"), parent=at)
    vals = s._phi_values(s.xi0, s.zeta0, a.embedding_into(s.G))
    staged = induce_character(at, induce_character(a, vals, at), s.G)
    a_in_g = s.subgroup(SubgroupSpec("A"))
    assert staged.allclose(induce_character(a_in_g, vals, s.G))
    assert staged.degree == s.G.order // a.order


@pytest.mark.parametrize("p,m,e", [(3, 1, 0), (2, 2, 0), (2, 2, 1), (3, 1, 1)])
def test_mackey_matches_inner_product(p, m, e):
    s = setting(p, m, e)
    G = s.G
    ad = s.subgroup(SubgroupSpec("ADelta", eps=s.eps))
    phi = s._phi_values(s.xi0, s.zeta0, ad.embedding_into(G))
    theta = s.subgroup(SubgroupSpec("Theta"))
    triv = np.ones(theta.order)
    configs = [(ad, phi, theta, triv), (theta, triv, theta, triv), (ad, phi, ad, phi)]
    for r in (s.r_full, s.r_minus(1), s.r_minus(3)):
        Q = s.subgroup(SubgroupSpec("Q_r", r=r))
        configs.append((ad, phi, Q, np.ones(Q.order)))
    for H1, c1, H2, c2 in configs:
        assert mackey_hom_dim(G, H1, c1, H2, c2) == inner_product(induce_character(H1, c1), induce_character(H2, c2))


def test_mackey_trivial_case(s4):
    G = s4[0]
    whole = G.subgroup(G.all)
    assert mackey_hom_dim(G, whole, np.ones(G.order), whole, np.ones(G.order)) == 1


def test_mackey_rejects_non_linear(s4):
    G = s4[0]
    whole = G.subgroup(G.all)
    with pytest.raises(ValueError):
        mackey_hom_dim(G, whole, 2 * np.ones(G.order), whole, np.ones(G.order))


def test_endomorphisms_of_theta_induction():
    s = setting(3, 1, 0)
    at = s.subgroup(SubgroupSpec("ATheta"))
    theta = s.subgroup(SubgroupSpec("Theta"), parent=at)
    triv = np.ones(theta.order)
    ind = induce_character(theta, triv, at)
    assert inner_product(ind, ind) == (s.m + 1) ** 2 == 4
    assert mackey_hom_dim(at, theta, triv, theta, triv) == 4


def test_endomorphisms_of_w00_tilde():
    s = setting(3, 1, 0)
    w = s.w_tilde_character(0, 0)
    assert inner_product(w, w) == 2
