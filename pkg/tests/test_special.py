"""Special functions: gamma family, zeta family, Bessel, hypergeometric."""

import numpy as np
import pytest

from rsmoment.special import (EULER_GAMMA, bessel_j, cgamma, digamma,
                              hurwitz_zeta, hyp2f1, loggamma, zeta,
                              zeta_star)


RNG = np.random.default_rng(3)


def _draws(k):
    return [complex(RNG.uniform(0.2, 3.0), RNG.uniform(-3.0, 3.0))
            for _ in range(k)]


def test_gamma_recurrence():
    for z in _draws(20):
        assert cgamma(z + 1) == pytest.approx(z * cgamma(z), rel=1e-12)


def test_gamma_reflection():
    for z in _draws(20):
        lhs = cgamma(z) * cgamma(1.0 - z)
        rhs = np.pi / np.sin(np.pi * z)
        assert lhs == pytest.approx(rhs, rel=1e-11)


def test_gamma_duplication():
    for z in _draws(20):
        lhs = cgamma(2.0 * z)
        rhs = cgamma(z) * cgamma(z + 0.5) * 2.0 ** (2.0 * z - 1.0) \
            / np.sqrt(np.pi)
        assert lhs == pytest.approx(rhs, rel=1e-11)


def test_loggamma_known_values():
    assert cgamma(5.0) == pytest.approx(24.0, rel=1e-13)
    assert cgamma(0.5) == pytest.approx(np.sqrt(np.pi), rel=1e-13)
    # principal branch continuity high in the plane
    z = 2.0 + 30.0j
    assert np.exp(loggamma(z)) == pytest.approx(cgamma(z), rel=1e-11)


def test_digamma_values():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-12)
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2.0 * np.log(2.0),
                                         rel=1e-12)
    for z in _draws(10):
        assert digamma(z + 1.0) == pytest.approx(digamma(z) + 1.0 / z,
                                                 rel=1e-10)


def test_zeta_oracles():
    assert zeta(2.0) == pytest.approx(np.pi ** 2 / 6.0, rel=1e-12)
    assert zeta(4.0) == pytest.approx(np.pi ** 4 / 90.0, rel=1e-12)
    # zeta(1/2) from published tables
    assert zeta(0.5) == pytest.approx(-1.4603545088095868, rel=1e-10)
    # zeta(1/2 + 14.134725i) is near the first nontrivial zero
    assert abs(zeta(0.5 + 14.134725141734693j)) < 1e-6


def test_hurwitz_zeta_reduction():
    for s in (2.0, 1.5 + 0.5j, 0.7 + 2.0j):
        assert hurwitz_zeta(s, 1.0) == pytest.approx(zeta(s), rel=1e-11)
        # Splitting identity: zeta(s, a) = a^{-s} + zeta(s, a+1)
        a = 0.3
        assert hurwitz_zeta(s, a) == pytest.approx(
            a ** -np.asarray(s, complex) + hurwitz_zeta(s, a + 1.0),
            rel=1e-11)


def test_zeta_star_functional_equation():
    # zeta*(s) = Gamma(s/2) zeta(s) pi^{-s/2} is invariant under s -> 1-s.
    for s in (0.3 + 2.0j, 0.8 - 1.0j, 0.5 + 5.0j, 1.7 + 0.2j):
        assert zeta_star(s) == pytest.approx(zeta_star(1.0 - s), rel=1e-10)


def test_bessel_j_integer_order_oracles():
    # Published values of J_0 and J_1.
    assert bessel_j(0.0, 1.0) == pytest.approx(0.7651976865579666, rel=1e-12)
    assert bessel_j(1.0, 2.5) == pytest.approx(0.4970941024642741, rel=1e-10)


def test_bessel_j_against_mpmath_all_regimes():
    mp = pytest.importorskip("mpmath")
    # Points chosen to hit the series, Schlafli and Hankel branches.
    cases = [(0.4, 1.0), (0.4 + 0.5j, 8.0), (0.3j, 11.5), (2.0j, 19.0),
             (0.4 + 0.5j, 14.0), (1.0 + 2.0j, 25.0), (0.7, 35.0),
             (0.5 + 1.5j, 40.0)]
    for order, x in cases:
        ref = complex(mp.besselj(mp.mpc(order), mp.mpf(x)))
        assert bessel_j(order, x) == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_bessel_j_recurrence():
    # J_{m-1}(x) + J_{m+1}(x) = (2 m / x) J_m(x).
    for x in (1.5, 7.0, 18.0):
        for m in (0.8 + 0.6j, 0.5 + 2.0j):
            lhs = bessel_j(m - 1.0, x) + bessel_j(m + 1.0, x)
            rhs = 2.0 * m / x * bessel_j(m, x)
            assert lhs == pytest.approx(rhs, rel=2e-9, abs=1e-12)


def test_hyp2f1_known_values():
    # 2F1(a,b;c;0) = 1; Gauss summation at z = 1.
    assert hyp2f1(0.3, 0.7, 1.1, 0.0) == pytest.approx(1.0, rel=1e-14)
    a, b, c = 0.3, 0.2, 1.4
    gauss = cgamma(c) * cgamma(c - a - b) / (cgamma(c - a) * cgamma(c - b))
    assert hyp2f1(a, b, c, 1.0) == pytest.approx(gauss, rel=1e-9)
    # log identity: 2F1(1,1;2;z) = -log(1-z)/z
    z = 0.37
    assert hyp2f1(1.0, 1.0, 2.0, z) == pytest.approx(
        -np.log(1 - z) / z, rel=1e-12)


def test_hyp2f1_contiguous_relation():
    # Gauss contiguous relation:
    # (c-a) F(a-1) + (2a-c+(b-a)z) F(a) + a(z-1) F(a+1) = 0.
    rng = np.random.default_rng(17)
    for _ in range(15):
        a = complex(rng.uniform(0.2, 1.5), rng.uniform(-0.5, 0.5))
        b = complex(rng.uniform(0.2, 1.5), rng.uniform(-0.5, 0.5))
        c = complex(rng.uniform(1.6, 3.0), rng.uniform(-0.5, 0.5))
        z = float(rng.uniform(-0.8, 0.8))
        f0 = hyp2f1(a - 1, b, c, z)
        f1 = hyp2f1(a, b, c, z)
        f2 = hyp2f1(a + 1, b, c, z)
        res = (c - a) * f0 + (2 * a - c + (b - a) * z) * f1 \
            + a * (z - 1) * f2
        assert abs(res) < 1e-9 * max(abs(f0), abs(f1), abs(f2), 1.0)
