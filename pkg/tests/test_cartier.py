"""Cartier operator, its inverse, nu = ker(C-1), and Artin-Schreier preimages.

The small cases are pinned against hand computations; the operator axioms get
exhaustive slice sweeps in the CLI verify suites and the acceptance tests.
"""

import pytest
from math import comb

from logcartier.cartier import (
    ArtinSchreierExtension,
    artin_schreier_solve,
    c_minus_one_surjectivity,
    cartier,
    cartier_slice_matrix,
    dlog_wedge,
    etale_obstruction_demo,
    frobenius,
    inverse_cartier,
    nu_sections,
    slice_bijection_ok,
    zb_decomposition,
)
from logcartier.forms import FormRing


def log_ring(p, m=2, radius=None):
    r = radius if radius is not None else 2 * p
    return FormRing(
        p,
        names=tuple(f"T{i+1}" for i in range(m)),
        log=tuple(range(m)),
        window=((0, r),) * m,
    )


def plain_ring(p, m=1, radius=None):
    r = radius if radius is not None else 2 * p
    return FormRing(p, names=tuple(f"T{i+1}" for i in range(m)), log=(), window=((0, r),) * m)


def test_frobenius_is_p_th_power():
    r = plain_ring(3, m=1, radius=9)
    f = r.monomial((1,)) + r.one() * 2
    f3 = f.wedge(f).wedge(f)
    assert frobenius(f) == f3  # freshman's dream with F_p coefficients


def test_inverse_cartier_on_generators():
    r = log_ring(3, m=1, radius=9)
    assert inverse_cartier(r.gen(0)) == r.gen(0)  # dlog T -> dlog T
    plain = plain_ring(3, m=1, radius=9)
    # dT -> T^{p-1} dT
    assert inverse_cartier(plain.gen(0)) == plain.monomial((2,)).wedge(plain.gen(0))


def test_inverse_cartier_twists_coefficients():
    r = log_ring(2, m=1, radius=8)
    f = r.monomial((3,)).wedge(r.gen(0))
    # T^3 dlogT -> T^6 dlogT
    assert inverse_cartier(f) == r.monomial((6,)).wedge(r.gen(0))


def test_cartier_undoes_inverse_on_dlog_slice():
    r = log_ring(2, m=1)
    eta = r.monomial((1,)).wedge(r.gen(0))
    assert cartier(inverse_cartier(eta)) == eta


def test_cartier_main_axiom_single_variable():
    # C(T^{p-1} dT) = dT on the plain line
    p = 3
    r = plain_ring(p, m=1, radius=2 * p)
    t = r.monomial((1,))
    form = r.monomial((p - 1,)).wedge(r.gen(0)) * 1
    lhs = cartier(t.wedge(t).wedge(t.d()))  # T^2 dT
    assert lhs == t.d()


def test_cartier_requires_closed_input():
    r = plain_ring(3, m=2)
    omega = r.monomial((0, 1)).wedge(r.gen(0))  # T2 dT1, d = dT2^dT1 != 0
    with pytest.raises(ValueError):
        cartier(omega)


def test_cartier_kills_exact_form():
    p = 3
    r = plain_ring(p, m=1)
    exact = r.monomial((2,)).d()  # 2 T dT, weight 2 not divisible by 3
    assert cartier(exact).is_zero()
    exact2 = r.monomial((p,)).wedge(r.gen(0)) * 0 + r.monomial((2,)).d()
    assert cartier(exact2).is_zero()


def test_zb_dims_by_hand():
    # p=2, one log variable: every 1-form is closed; d(T^w) = w T^w dlogT
    r = log_ring(2, m=1)
    zb_even = zb_decomposition(r, 1, (2,))
    assert (zb_even.dim_Z, zb_even.dim_B) == (1, 0)
    zb_odd = zb_decomposition(r, 1, (3,))
    assert (zb_odd.dim_Z, zb_odd.dim_B) == (1, 1)


def test_slice_matrix_zero_map_at_nondivisible_weight():
    r = log_ring(3, m=1)
    zb, src, mat = cartier_slice_matrix(r, 1, (4,))
    assert src is None
    assert mat.cols == zb.dim_Z


def test_cartier_slice_oracle_plain_line():
    # C(T^3 dT) = T dT at p=2: T^3 dT = C^{-1}(T dT)
    p = 2
    r = plain_ring(p, m=1)
    form = r.monomial((3,)).wedge(r.gen(0))
    assert cartier(form) == r.monomial((1,)).wedge(r.gen(0))


def test_slice_bijection_small_grid():
    r = log_ring(2, m=2)
    for j in (0, 1, 2):
        for w in ((0, 0), (1, 0), (1, 1), (2, 1)):
            assert slice_bijection_ok(r, j, w)


def test_nu_dims_match_binomials():
    for p in (2, 3):
        for m in (1, 2):
            ring = log_ring(p, m=m)
            for n in range(m + 2):
                rep = nu_sections(ring, n)
                assert rep.dim == comb(m, n)
                assert rep.matches_dlog_span


def test_nu_basis_is_fixed_by_cartier():
    ring = log_ring(3, m=2)
    rep = nu_sections(ring, 1)
    for f in rep.basis:
        assert f.d().is_zero()
        assert cartier(f) == f


def test_nu_respects_log_subsets():
    p = 2
    ring = FormRing(p, names=("T1", "T2"), log=(1,), window=((0, 4), (0, 4)))
    assert nu_sections(ring, 1).dim == 1  # only dlog T2
    assert nu_sections(ring, 2).dim == 0


def test_dlog_wedge_degree_and_closedness():
    ring = log_ring(2, m=3)
    w = dlog_wedge(ring, (0, 2))
    assert w.degree == 2
    assert w.d().is_zero()
    assert cartier(w) == w


def test_artin_schreier_control_solution():
    # gamma^p - gamma = T^p - T has the base solution gamma = T
    p = 3
    ring = FormRing(p, names=("t",), laurent=(0,), window=((-10, 10),))
    h = ring.monomial((p,)) - ring.monomial((1,))
    sol = artin_schreier_solve(ring, h, [(k,) for k in range(-3, 4)])
    assert sol is not None
    assert frobenius(sol) - sol == h


def test_artin_schreier_no_solution_for_pole():
    p = 2
    ring = FormRing(p, names=("t",), laurent=(0,), window=((-17, 17),))
    h = ring.monomial((-1,))
    assert artin_schreier_solve(ring, h, [(k,) for k in range(-8, 9)]) is None


def test_extension_relation_and_rank():
    p = 2
    ring = FormRing(p, names=("t",), laurent=(0,), window=((-9, 9),))
    ext = ArtinSchreierExtension(ring, ring.monomial((-1,)))
    g = ext.gamma()
    assert ext.power(g, p) == g + ext.embed(ring.monomial((-1,)))
    assert ext.module_rank() == p


def test_extension_certificate_for_inverse_pole():
    for p in (2, 3):
        rep = etale_obstruction_demo(p, bound=6)
        assert not rep.base_solution_exists
        assert rep.certificate.ok
        assert rep.control_solution is not None
        assert rep.ok


def test_certificate_with_nonempty_wedge():
    p = 2
    ring = log_ring(p, m=2, radius=2 * p)
    h = ring.monomial((1, 0))
    cert = c_minus_one_surjectivity(ring, h, (0, 1))
    assert cert.ok
    assert cert.target == h.wedge(dlog_wedge(ring, (0, 1)))


def test_certificate_eta_prime_is_closed():
    p = 3
    ring = log_ring(p, m=1, radius=2 * p)
    cert = c_minus_one_surjectivity(ring, ring.monomial((1,)), (0,))
    assert cert.closed and cert.is_inverse_cartier_preimage
