"""Top-level acceptance gate: one test per headline verification target.

Each test prints a single PASS/FAIL summary line in verbose pytest output.
Tolerances match the CLI defaults; the heavyweight right-hand-side
assemblies are shared with the module tests through conftest caching.
"""

import math

import numpy as np
import pytest

from rsmoment.arithmetic import kloosterman
from rsmoment.cli import (run_hplus, run_jbessel_mellin, run_kernels,
                          run_kuznetsov, run_lemma41, run_prop32)
from rsmoment.moments import (eisenstein_level1, error_term_L1_minus,
                              error_term_L2)
from rsmoment.special import cgamma, hyp2f1, zeta_star
from rsmoment.spectral import first_moment_lhs
from rsmoment.transforms import H0, TestFunction

from conftest import cached_dataset, cached_rhs, cached_testfunction


def test_criterion_1_divisor_sum_identity():
    """Twisted divisor-sum identity: 100 random cases at q_max = 1e5."""
    reports = run_lemma41(cases=100, seed=0, q_max=100000)
    assert len(reports) == 100
    vanishing = 0
    for rep in reports:
        lhs = complex(*rep["lhs"])
        rhs = complex(*rep["rhs"])
        tail = sum(rep["tails"].values())
        assert abs(lhs - rhs) <= tail + 1e-12, rep["parameters"]
        if rhs == 0:
            vanishing += 1
            assert lhs == pytest.approx(0.0, abs=1e-12)
        else:
            assert rep["rel_err"] <= 1e-5, rep["parameters"]
    assert vanishing > 0


def test_criterion_2_kernel_representations():
    """F1/F2/F3 representation agreement on 50 seeded draws per kernel."""
    reports = run_kernels(draws=50, seed=7)
    assert len(reports) >= 150
    for rep in reports:
        tol = 1e-8 if rep["identity"].endswith("even_k") else 1e-7
        assert rep["abs_err"] <= tol or rep["rel_err"] <= tol, rep


def test_criterion_3_bessel_and_hplus_routes():
    """J-Bessel Mellin route (1e-8) and the H+ transform routes (1e-6)."""
    for rep in run_jbessel_mellin(draws=20, seed=11):
        assert rep["abs_err"] <= 1e-8 or rep["rel_err"] <= 1e-8, rep
    for rep in run_hplus(draws=20, seed=13):
        assert rep["abs_err"] <= 1e-6 or rep["rel_err"] <= 1e-6, rep


def test_criterion_4_shifted_sum_decomposition():
    """Direct shifted divisor L_q sum vs its contour decomposition."""
    for (s, u) in ((0.9, 1.3), (0.85 + 0.1j, 1.25)):
        for q in (1, 2, 3, 5):
            for n in (1, 2, 4):
                (rep,) = run_prop32(s=s, u=u, t=0.3, q=q, n=n)
                assert rep["passed"], rep["parameters"]


def test_criterion_5_kuznetsov_trace_formula():
    """Spectral vs geometric side of the level-1 trace formula."""
    for (m, n) in ((1, 1), (1, 2)):
        (rep,) = run_kuznetsov(m=m, n=n, T=12.0, alpha=0.5)
        assert rep["passed"], rep
        spec = complex(*rep["lhs"])
        geom = complex(*rep["rhs"])
        allowance = sum(rep["tails"].values())
        assert abs(spec - geom) <= 1e-3 * abs(spec) + allowance


def test_criterion_6_first_moment_end_to_end():
    """Spectral first moment vs the assembled moment identity."""
    ds = cached_dataset()
    hf = cached_testfunction(12.0)
    for (n, t) in ((1, 0.0), (2, 0.0), (1, 0.5)):
        lhs = first_moment_lhs(ds, n, t, hf).total()
        rhs = cached_rhs(n, t, 12.0).total()
        assert abs(lhs - rhs) <= 1e-2 * abs(rhs), (n, t, lhs, rhs)


def test_criterion_7_asymptotic_trends():
    """Size trends: H0 scaling, error-term decay, main-term dominance."""
    # H0(h_{T,alpha}) grows like T^{1+alpha} (alpha = 1/2).
    ratio = H0(TestFunction(40.0, C=4.0)) / H0(TestFunction(20.0, C=4.0))
    assert abs(ratio / 2.0 ** 1.5 - 1.0) < 0.10

    # |L1-| stays inside a T^{alpha+beta+eps} envelope.  At fixed t the
    # exponent beta = log|t|/log T only shrinks as T grows, so doubling T
    # can enlarge |L1-| by at most a modest multiple of 2^{alpha+eps}.
    eis = eisenstein_level1(0.4)
    slack = 3.0
    l1m_6 = abs(error_term_L1_minus(0.5, eis, 2, TestFunction(6.0)))
    l1m_12 = abs(error_term_L1_minus(0.5, eis, 2, TestFunction(12.0)))
    assert l1m_12 <= slack * 2.0 ** 0.6 * l1m_6

    # |L2| decays rapidly in T: at least a tenfold drop from T=6 to T=12.
    l2_6 = abs(error_term_L2(0.5, eis, 2, TestFunction(6.0)))
    l2_12 = abs(error_term_L2(0.5, eis, 2, TestFunction(12.0)))
    assert l2_12 <= l2_6 / 10.0

    # The main term dominates every error term at (n, T) = (1, 12).
    rep = cached_rhs(1, 0.0, 12.0)
    main = abs(rep.M)
    for name, term in (("M_plus", rep.M_plus), ("M_minus", rep.M_minus),
                       ("L1_plus", rep.L1_plus), ("L1_minus", rep.L1_minus),
                       ("L2", rep.L2),
                       ("extra_continuous", rep.extra_continuous)):
        assert abs(term) < main, name


def test_criterion_8_special_function_invariants():
    """Quick structural identities for the special-function layer."""
    rng = np.random.default_rng(3)
    for _ in range(10):
        z = complex(rng.uniform(0.3, 2.5), rng.uniform(-2.0, 2.0))
        # Recurrence, reflection, duplication.
        assert cgamma(z + 1) == pytest.approx(z * cgamma(z), rel=1e-12)
        assert cgamma(z) * cgamma(1 - z) == pytest.approx(
            math.pi / np.sin(math.pi * z), rel=1e-10)
        assert cgamma(2 * z) == pytest.approx(
            cgamma(z) * cgamma(z + 0.5) * 2.0 ** (2 * z - 1)
            / math.sqrt(math.pi), rel=1e-10)

    # Completed zeta functional equation.
    for s in (0.3 + 2.0j, 1.7 - 0.4j, 0.5 + 14.0j):
        assert zeta_star(s) == pytest.approx(zeta_star(1 - s), rel=1e-10)

    # Gauss contiguous relation for 2F1 (real argument).
    for _ in range(10):
        a = rng.uniform(0.2, 1.5)
        b = rng.uniform(0.2, 1.5)
        c = rng.uniform(1.8, 3.0)
        z = rng.uniform(-0.8, 0.8)
        lhs = c * (c - 1) * (z - 1) * hyp2f1(a, b, c - 1, z) \
            + c * (c - 1 - (2 * c - a - b - 1) * z) * hyp2f1(a, b, c, z) \
            + (c - a) * (c - b) * z * hyp2f1(a, b, c + 1, z)
        assert lhs == pytest.approx(0.0, abs=1e-10)

    # Kloosterman sums: symmetry and the Weil bound.
    for _ in range(20):
        q = int(rng.integers(2, 60))
        m = int(rng.integers(1, 30))
        n = int(rng.integers(1, 30))
        s1 = kloosterman(m, n, q)
        assert s1 == pytest.approx(kloosterman(n, m, q), rel=1e-9, abs=1e-9)
        d = 2 ** sum(1 for p in range(2, q + 1)
                     if q % p == 0 and all(p % r for r in range(2, p)))
        g = math.gcd(math.gcd(m, n), q)
        assert abs(s1) <= d * math.sqrt(g) * math.sqrt(q) + 1e-9
