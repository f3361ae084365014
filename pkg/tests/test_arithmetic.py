"""Arithmetic layer: characters, exponential sums, divisor sums."""

import numpy as np
import pytest

from rsmoment.arithmetic import (DirichletCharacter, _lemma41_remainder,
                                 dirichlet_L, divisors, euler_phi, factorize,
                                 gauss_sum, kloosterman, lemma41_verify,
                                 mobius, sigma_general, twisted_gauss_sum,
                                 twisted_gauss_sum_direct)
from rsmoment.special import zeta


def test_factorize_divisors_mobius():
    assert tuple(factorize(360)) == ((2, 3), (3, 2), (5, 1))
    assert sorted(divisors(28)) == [1, 2, 4, 7, 14, 28]
    assert [mobius(n) for n in range(1, 11)] == \
        [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert euler_phi(36) == 12


def test_kloosterman_small_oracles():
    # S(1,1;2) = e(1/2)+... : a=1 only, 2*cos(2*pi*(1+1)/2) gives 2cos(2pi)
    assert kloosterman(1, 1, 1) == pytest.approx(1.0)
    # S(1,1;2): a=1, abar=1 -> e((1+1)/2) = e(1) = 1... cos(2 pi * 2/2)=1
    assert kloosterman(1, 1, 2) == pytest.approx(np.cos(2 * np.pi * 2 / 2))
    # S(1,1;5) = 2cos(4pi/5)+2cos(6pi/5) (a=1..4, abar=1,3,2,4)
    expected = sum(np.cos(2 * np.pi * (a + pow(a, -1, 5)) / 5)
                   for a in range(1, 5))
    assert kloosterman(1, 1, 5) == pytest.approx(expected)


def test_kloosterman_symmetry_and_weil():
    rng = np.random.default_rng(5)
    for _ in range(40):
        q = int(rng.integers(1, 60))
        m = int(rng.integers(1, 80))
        n = int(rng.integers(1, 80))
        s1 = kloosterman(m, n, q)
        assert s1 == pytest.approx(kloosterman(n, m, q), abs=1e-9)
        g = np.gcd(np.gcd(m, n), q)
        weil = np.sqrt(q) * np.sqrt(g) * len(divisors(q))
        assert abs(s1) <= weil + 1e-9


def test_twisted_gauss_sum_matches_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(25):
        N = int(rng.integers(1, 13))
        group = DirichletCharacter.all_mod(N)
        chi = group[int(rng.integers(0, len(group)))]
        q = N * int(rng.integers(1, 9))
        m = int(rng.integers(1, 40)) * int(rng.choice([-1, 1]))
        assert twisted_gauss_sum(chi, q, m) == pytest.approx(
            twisted_gauss_sum_direct(chi, q, m), abs=1e-9)


def test_gauss_sum_modulus():
    for N in (3, 4, 5, 7, 8, 11, 12):
        for chi in DirichletCharacter.all_mod(N):
            star = chi.primitive_core()
            if star.modulus > 1:
                tau = gauss_sum(star)
                assert abs(tau) == pytest.approx(
                    np.sqrt(star.modulus), rel=1e-12)


def test_dirichlet_L_trivial_is_zeta():
    chi = DirichletCharacter.trivial(1)
    for s in (2.0, 1.5 + 0.3j):
        assert dirichlet_L(s, chi) == pytest.approx(zeta(s), rel=1e-12)
    # principal mod 6 removes the 2 and 3 Euler factors
    chi6 = DirichletCharacter.trivial(6)
    s = 1.8
    expected = zeta(s) * (1 - 2.0 ** -s) * (1 - 3.0 ** -s)
    assert dirichlet_L(s, chi6) == pytest.approx(expected, rel=1e-12)


def test_sigma_general_trivial_reduces_to_divisor_sum():
    chi = DirichletCharacter.trivial(1)
    res = sigma_general(0.75, 12, chi, 1)
    expected = sum(d ** (1 - 2 * 0.75) for d in divisors(12))
    assert not res.vanishes
    assert res.value == pytest.approx(expected, rel=1e-12)


def test_lemma41_identity_explicit():
    # modulus 1: sum_q c_q(n)/q^{2s} * zeta(2s) = sigma_{1-2s}(n)
    chi = DirichletCharacter.trivial(1)
    lhs, rhs, tail = lemma41_verify(1.0, 6, chi, 1)
    expected = sum(d ** (1.0 - 2.0) for d in divisors(6))
    assert rhs == pytest.approx(expected, rel=1e-12)
    assert abs(lhs - rhs) <= max(tail, 1e-12)


def test_lemma41_vanishing_case():
    # A primitive character with R not dividing the sigma condition makes
    # the closed form vanish; the series must agree.
    chi = DirichletCharacter.all_mod(5)[1]
    assert not chi.is_principal
    lhs, rhs, tail = lemma41_verify(1.1, 7, chi, 5)
    if rhs == 0:
        assert abs(lhs) <= max(tail, 1e-9)
    else:
        assert abs(lhs - rhs) <= max(tail, 1e-9)


def test_lemma41_remainder_matches_bruteforce_band():
    cases = [(1.0 + 0j, 6, 1, 1), (0.75 + 0j, -14, 11, 22),
             (0.9 + 0.2j, 36, 4, 20)]
    for s, n, N, M in cases:
        chi = DirichletCharacter.all_mod(N)[-1]
        q0, q1 = 2000, 12000
        t0 = _lemma41_remainder(s, n, chi, M, q0)
        t1 = _lemma41_remainder(s, n, chi, M, q1)
        direct = sum(twisted_gauss_sum(chi, q, n)
                     * np.exp(-2 * s * np.log(q))
                     for q in range(q0 + 1, q1 + 1) if q % M == 0)
        assert abs((t0 - t1) - direct) < 1e-12
