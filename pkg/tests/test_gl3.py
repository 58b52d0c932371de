import numpy as np
import pytest

from psdec import gl3
from psdec.groups import BElement, b_multiply
from psdec.reports import FAIL, PASS

VALID = [(2, (2, 2, 3), 1, 3), (3, (2, 2, 3), 1, 3), (2, (4, 4, 6), 2, 6)]


def py_matmul(a, b, N):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) % N for j in range(3)] for i in range(3)]


def py_eta(g, c, m, p):
    """Oracle: read the subdiagonal entries off a nested-list matrix."""
    M = p**m
    return BElement(
        g[1][0] // p ** (c[0] - m) % M,
        g[2][1] // p ** (c[1] - m) % M,
        g[2][0] // p ** (c[2] - m) % M,
        g[0][0] % M,
        g[1][1] % M,
        g[2][2] % M,
    )


def test_identity_and_lower_elementary():
    ctx = gl3.make_context(3, (2, 2, 3), 1)
    eta = ctx.eta(gl3.identity())
    assert tuple(int(v) for v in eta) == (0, 0, 0, 1, 1, 1)
    g = gl3.u(2, 1, 3 ** (2 - 1), ctx.N)
    assert tuple(int(v) for v in ctx.eta(g)) == (1, 0, 0, 1, 1, 1)
    n, t, n_plus = ctx.iwahori_factor(g)
    assert np.array_equal(n, g)
    assert np.array_equal(t, gl3.identity()) and np.array_equal(n_plus, gl3.identity())


def test_membership():
    ctx = gl3.make_context(2, (2, 2, 3), 1)
    assert ctx.in_parahoric(gl3.identity(), ctx.c)
    assert not ctx.in_parahoric(gl3.u(2, 1, 2, ctx.N), ctx.c)
    assert ctx.in_parahoric(gl3.u(2, 1, 4, ctx.N), ctx.c)
    assert ctx.in_parahoric(gl3.u(2, 1, 2, ctx.N), ctx.shifted)


def test_eta_rejects_bad_input():
    ctx = gl3.make_context(2, (2, 2, 3), 1)
    with pytest.raises(gl3.PreconditionError):
        ctx.eta(gl3.u(2, 1, 1, ctx.N))
    with pytest.raises(gl3.PreconditionError):
        gl3.make_context(2, (3, 3, 4), 2).eta(gl3.identity())
    with pytest.raises(gl3.PreconditionError):
        gl3.make_context(2, (2, 2, 3), 1, ell=2)
    with pytest.raises(ValueError):
        gl3.make_context(4, (2, 2, 3), 1)


def test_parahoric_index():
    assert gl3.parahoric_index(3, (2, 2, 3), 1) == 27
    assert gl3.parahoric_index(2, (4, 4, 6), 2) == 2**6


def test_group_orders():
    assert gl3.gl3_order(2, 1) == 168
    assert gl3.gl3_order(2, 2) == 86016 == gl3.gl3_order_formula(2, 2)
    assert gl3.borel_order(2, 2) == 512
    assert gl3.gl3_order(3, 1) == gl3.gl3_order_formula(3, 1)
    for p, ell in [(2, 1), (2, 2), (3, 1)]:
        assert gl3.flag_index_check(p, ell).status == PASS


@pytest.mark.parametrize("p,c,m,ell", VALID)
def test_eta_against_python_oracle(p, c, m, ell):
    ctx = gl3.make_context(p, c, m, ell)
    rng = np.random.default_rng(11)
    a = ctx.sample_parahoric(rng, 200, ctx.shifted)
    b = ctx.sample_parahoric(rng, 200, ctx.shifted)
    delta = ctx.ring.pi_power(ctx.delta_exp)
    for g, h in zip(a.tolist(), b.tolist()):
        prod = py_eta(py_matmul(g, h, ctx.N), c, m, p)
        assert prod == b_multiply(ctx.ring, delta, py_eta(g, c, m, p), py_eta(h, c, m, p))
        assert tuple(int(v) for v in ctx.eta(np.array(g))) == py_eta(g, c, m, p)


@pytest.mark.parametrize("p,c,m,ell", VALID)
def test_kernel_examples(p, c, m, ell):
    ctx = gl3.make_context(p, c, m, ell)
    rng = np.random.default_rng(5)
    ident = ctx.B.identity
    assert np.all(ctx.eta_index(ctx.sample_n(rng, 100, ctx.c)) == ident)
    assert np.all(ctx.eta_index(ctx.sample_n_plus(rng, 100)) == ident)
    assert ctx.eta_index(gl3.diag(1 + p**m, 1, 1, ctx.N)) == ident
    for t in range(2, p**m):
        if t % p:
            assert ctx.eta_index(gl3.diag(t, 1, 1, ctx.N)) != ident


@pytest.mark.parametrize("p,c,m,ell", VALID)
def test_suite_passes_and_is_deterministic(p, c, m, ell):
    first = gl3.run_gl3_suite(p, c, m, seed=7, ell=ell, hom_samples=2000, samples=300)
    second = gl3.run_gl3_suite(p, c, m, seed=7, ell=ell, hom_samples=2000, samples=300)
    assert [r.status for r in first] == [PASS] * 5
    assert [r.to_dict() for r in first] == [r.to_dict() for r in second]


@pytest.mark.parametrize("p,cosets", [(2, 8), (3, 27)])
def test_coset_counts(p, cosets):
    report = gl3.verify_coset_identification(gl3.make_context(p, (2, 2, 3), 1))
    assert report.detail["cosets"] == cosets
    assert report.detail["generator_types"] == 9


def test_image_times_kernel():
    report = gl3.verify_image_kernel(2, (2, 2, 3), 1)
    d = report.detail
    assert report.status == PASS
    assert d["image"] * d["kernel"] == d["order"] == 1048576


def test_read_off_is_not_a_homomorphism_below_the_interior_depth():
    ctx = gl3.make_context(2, (3, 3, 4), 2)
    assert not ctx.preconditions_hold
    assert gl3.verify_eta_homomorphism(ctx, 500, strict=False).status == FAIL
    raw = gl3.verify_eta_homomorphism(ctx, 500, strict=False, raw=True)
    assert raw.status == FAIL
    assert raw.detail["mismatches"] > 0


def test_conjugation_formulas():
    assert gl3.verify_conjugation_formulas(3, 2, samples=30).status == PASS
