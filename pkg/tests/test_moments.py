"""Automorphic form models, L_q decomposition, and moment terms."""

import numpy as np
import pytest

from rsmoment.moments import (AutomorphicForm, L_q_decomposed, L_q_direct,
                              L_q_direct_with_tail, MomentError,
                              _ramanujan_tau, assemble_rhs,
                              eisenstein_level1, error_term_L1_minus,
                              error_term_L1_plus, error_term_L2,
                              extra_terms_Mpm, holomorphic_delta, maass_form,
                              main_term_M)
from rsmoment.transforms import TestFunction

from conftest import cached_rhs, cached_testfunction

HF6 = TestFunction(6.0)


def test_ramanujan_tau_oracles():
    tau = _ramanujan_tau(1000)
    known = {1: 1, 2: -24, 3: 252, 4: -1472, 5: 4830, 6: -6048,
             7: -16744, 8: 84480, 9: -113643, 10: -115920, 11: 534612}
    for n, v in known.items():
        assert tau[n - 1] == pytest.approx(v, rel=1e-10)
    # Hecke multiplicativity and the p^2 relation.
    assert tau[5] == pytest.approx(tau[1] * tau[2], rel=1e-10)
    assert tau[24] == pytest.approx(tau[4] ** 2 - 5 ** 11, rel=1e-10)


def test_form_constructors_and_guards():
    eis = eisenstein_level1(0.4)
    assert not eis.is_cuspidal
    assert eis.coefficients(6) == pytest.approx(
        sum(d ** (-0.8j) for d in (1, 2, 3, 6)) * 6 ** 0.4j, rel=1e-12)
    delta = holomorphic_delta()
    assert delta.is_cuspidal and delta.weight == 12
    with pytest.raises(MomentError):
        eisenstein_level1(0.0).constant_term(+1)
    mf = maass_form(0.5j, lambda n: 1.0 if n == 1 else 0.0)
    assert mf.is_cuspidal


def test_lq_direct_frozen_oracle():
    eis = eisenstein_level1(0.3)
    val = L_q_direct(0.9, 1.3, eis, 1, 1)
    # Real by the conjugate-symmetry of the Eisenstein coefficients.
    assert abs(val.imag) < 1e-10
    assert val.real == pytest.approx(0.30203662986917, abs=5e-7)


def test_lq_decomposition_matches_direct():
    eis = eisenstein_level1(0.3)
    for (s, u, n, q) in [(0.9, 1.3, 2, 3), (0.85 + 0.1j, 1.25, 4, 5)]:
        direct, dtail = L_q_direct_with_tail(s, u, eis, n, q)
        dec = L_q_decomposed(s, u, eis, n, q)
        tol = max(1e-5, 3.0 * (dtail + sum(dec.tails.values())))
        assert abs(direct - dec.total()) < tol


def test_lq_decomposition_matches_direct_cusp():
    delta = holomorphic_delta()
    direct, dtail = L_q_direct_with_tail(0.9, 1.3, delta, 1, 1)
    dec = L_q_decomposed(0.9, 1.3, delta, 1, 1)
    # Cusp form: no constant-term contributions.
    assert dec.M_q_plus == 0 and dec.M_q_minus == 0
    assert abs(direct - dec.total()) < 2e-3


def test_lq_domain_guard():
    eis = eisenstein_level1(0.3)
    with pytest.raises(MomentError):
        L_q_decomposed(1.4, 1.3, eis, 1, 1)   # needs Re(s) < Re(u)


def test_main_term_frozen_oracle():
    eis = eisenstein_level1(0.4)
    val = main_term_M(0.5, eis, 2, HF6)
    assert val == pytest.approx(1.359064363505503, rel=1e-9)


def test_main_term_digamma_limit_consistency():
    # The s = 1/2 digamma branch must agree with the generic branch as
    # s -> 1/2 (Richardson extrapolation in delta).
    eis = eisenstein_level1(0.4)
    at_half = main_term_M(0.5, eis, 2, HF6)
    d1 = main_term_M(0.5 + 4e-4, eis, 2, HF6)
    d2 = main_term_M(0.5 + 2e-4, eis, 2, HF6)
    extrap = 2.0 * d2 - d1
    assert extrap == pytest.approx(at_half, rel=5e-6)


def test_extra_terms_conjugate_pair():
    eis = eisenstein_level1(0.4)
    mp, mm = extra_terms_Mpm(0.5, eis, 2, HF6)
    assert mp == pytest.approx(
        complex(-1.7615649892132615e-05, 2.105409751109853e-05), rel=1e-6)
    assert mm == pytest.approx(np.conj(mp), rel=1e-10)
    # Cusp forms contribute nothing.
    assert extra_terms_Mpm(0.5, holomorphic_delta(), 2, HF6) == (0.0, 0.0)


def test_l1_plus_frozen_and_contour_invariance():
    eis = eisenstein_level1(0.4)
    val = error_term_L1_plus(0.5, eis, 2, HF6)
    assert val == pytest.approx(-0.19803333656637057, rel=1e-8, abs=1e-8)
    shifted = error_term_L1_plus(0.5, eis, 2, HF6,
                                 sigma_u=1.3, sigma_v=0.9)
    assert shifted == pytest.approx(val, rel=1e-9, abs=1e-9)


def test_l1_minus_routes_cross_validate():
    # Dual routes: single-line series form vs the shifted double contour.
    eis = eisenstein_level1(0.4)
    a = error_term_L1_minus(0.5, eis, 3, HF6, representation="contour")
    assert a == pytest.approx(0.004844126606601867, rel=1e-7, abs=1e-10)
    b = error_term_L1_minus(0.5, eis, 3, HF6, representation="series")
    assert b == pytest.approx(a, rel=1e-6, abs=1e-9)


def test_l1_minus_structural_zero():
    eis = eisenstein_level1(0.4)
    assert error_term_L1_minus(0.5, eis, 1, HF6) == 0.0


def test_l2_frozen_and_structural_zero():
    eis = eisenstein_level1(0.4)
    val = error_term_L2(0.5, eis, 2, HF6)
    assert val == pytest.approx(
        complex(-0.0001365685267221966, -1.0048110800324148e-08),
        rel=1e-6, abs=1e-8)
    assert error_term_L2(0.5, holomorphic_delta(), 2, HF6) == 0.0


def test_assemble_rhs_t0_structure():
    rep = cached_rhs(1, 0.0, 12.0)
    # n = 1: L1- vanishes; total is real for the t = 0 Eisenstein form.
    assert rep.L1_minus == 0.0
    assert abs(rep.total().imag) < 1e-9
    assert rep.total().real == pytest.approx(22.8213114, rel=1e-5)
    # The reported tails must all be small and finite.
    for k, v in rep.tails.items():
        assert np.isfinite(v) and v < 1e-4, k
