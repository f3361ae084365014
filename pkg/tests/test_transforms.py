"""Spectral test functions, H-transforms, and the F-kernels."""

import numpy as np
import pytest

from rsmoment.special import bessel_j
from rsmoment.transforms import (F1, F2, F3, H0, H_plus, H_weight,
                                 TestFunction, bessel_j_contour)


HF = TestFunction(6.0)


def test_testfunction_shape():
    # even, vanishes at t = +-i/2, concentrated near +-T
    ts = np.array([0.3, 1.7, 5.0, -5.0, 6.0])
    vals = HF(ts)
    assert np.allclose(vals, HF(-ts))
    assert abs(HF(0.5j)) < 1e-14
    assert abs(HF(-0.5j)) < 1e-14
    assert HF(6.0).real > HF(0.0).real > 0.0
    with pytest.raises(ValueError):
        TestFunction(0.5)
    with pytest.raises(ValueError):
        TestFunction(6.0, alpha=1.5)


def test_h0_positive_and_scaling():
    h0 = H0(HF)
    assert h0 > 0.0
    # H0 grows like T^{1+alpha}; use C = 4 (poles still outside the strip)
    # so the rational damping factor does not distort the two-point ratio.
    ratio = H0(TestFunction(24.0, C=4.0)) / H0(TestFunction(12.0, C=4.0))
    assert 2.0 ** 1.5 * 0.9 < ratio < 2.0 ** 1.5 * 1.1


def test_bessel_j_contour_matches_direct():
    for two_u, x in ((0.8, 0.7), (0.4 + 0.6j, 3.0), (1.4 - 0.4j, 12.0)):
        res = bessel_j_contour(two_u, x)
        assert res.value == pytest.approx(bessel_j(two_u, x), rel=1e-10,
                                          abs=1e-12)


def test_hplus_forms_agree():
    for x in (0.3, 2.0, 9.0, 16.0):
        a = H_plus(x, HF, form="real_line")
        b = H_plus(x, HF, form="contour")
        assert a == pytest.approx(b, rel=1e-8, abs=1e-10)


def test_hplus_is_real_and_domain_checked():
    v = H_plus(5.0, HF)
    assert abs(np.imag(v)) < 1e-10 * (1.0 + abs(v))
    with pytest.raises(ValueError):
        H_plus(-1.0, HF)


def test_hweight_conjugation_symmetry():
    # For real test functions, conjugating s conjugates the weight.
    s = 0.8 + 0.3j
    a = H_weight(s, HF, nu=0.4j)
    b = H_weight(np.conj(s), HF, nu=0.4j)
    assert np.conj(a) == pytest.approx(b, rel=1e-9)


_KDRAWS = [
    # (s, u, nu_or_k, x) covering x < 1, x = 1, x > 1
    (0.8, 1.1, 0.25, 0.4),
    (0.8, 1.1, 0.25, 1.0),
    (0.8, 1.1, 0.25, 2.7),
    (0.9 - 0.2j, 1.2 + 0.1j, 0.2 + 0.15j, 0.85),
    (0.7 + 0.1j, 1.05, 0.1j, 5.0),
]


def test_f1_representations_agree():
    for s, u, nu, x in _KDRAWS:
        vals = []
        for rep in ("hypergeometric", "barnes", "integral_rep"):
            try:
                vals.append(F1(s, u, nu, x, representation=rep))
            except ValueError:
                continue
        assert len(vals) >= 2
        for v in vals[1:]:
            assert v == pytest.approx(vals[0], rel=1e-8, abs=1e-9)


def test_f2_representations_agree():
    for s, u, _, x in _KDRAWS:
        k = 4
        vals = []
        for rep in ("hypergeometric", "barnes", "integral_rep"):
            try:
                vals.append(F2(s, u, k, x, representation=rep))
            except ValueError:
                continue
        assert len(vals) >= 2
        for v in vals[1:]:
            assert v == pytest.approx(vals[0], rel=1e-8, abs=1e-9)


def test_f3_representations_agree():
    for s, u, nu, x in _KDRAWS:
        a = F3(s, u, nu, x, representation="hypergeometric")
        b = F3(s, u, nu, x, representation="barnes")
        assert a == pytest.approx(b, rel=1e-8, abs=1e-9)


def test_even_weight_coincidence():
    # F1 at nu = (k-1)/2 coincides with F2 at even weight k.
    for s, u, _, x in _KDRAWS:
        for k in (2, 6):
            nu = (k - 1) / 2.0
            a = F1(s, u, nu, x, representation="barnes")
            b = F2(s, u, k, x)
            assert a == pytest.approx(b, rel=1e-8, abs=1e-9)


def test_kernel_domain_guards():
    with pytest.raises(ValueError):
        F1(0.8, 1.1, 0.25, -1.0)
    with pytest.raises(ValueError):
        F1(0.3, 1.1, 0.25, 1.0, representation="barnes")
    with pytest.raises(ValueError):
        F1(0.8, 1.1, 0.25, 1.0, representation="nonsense")
