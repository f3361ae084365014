"""Contour quadrature: straight lines, bent wings, power tails."""

import numpy as np
import pytest

from rsmoment.contour import (ContourError, ContourSpec, bent_line_integral,
                              double_line_integral, line_integral,
                              power_tail_integral)
from rsmoment.special import loggamma


def test_cahen_mellin_exponential():
    # (1/2 pi i) int_(2) Gamma(v) x^{-v} dv = e^{-x}
    for x in (0.5, 1.0, 3.0):
        f = lambda v: np.exp(loggamma(v) - v * np.log(x))
        res = line_integral(f, ContourSpec(2.0, 40.0))
        assert res.value == pytest.approx(np.exp(-x), rel=1e-11)
        assert abs(res.value - np.exp(-x)) <= max(res.tail_estimate, 1e-11)


def test_line_integral_rejects_pole_on_path():
    with pytest.raises(ContourError):
        ContourSpec(1.0, 10.0, poles=(1.0 + 0.3j,))


def test_double_line_integral_separable():
    # Product of two Cahen-Mellin integrals evaluated jointly.
    x, y = 1.3, 0.7
    f = lambda u, v: np.exp(loggamma(u) - u * np.log(x)
                            + loggamma(v) - v * np.log(y))
    res = double_line_integral(f, ContourSpec(1.5, 30.0),
                               ContourSpec(2.0, 30.0))
    assert res.value == pytest.approx(np.exp(-x - y), rel=1e-9)


def test_bent_contour_matches_straight_line():
    # Gamma(v) x^{-v} with x > 1: bending left is admissible away from the
    # poles at v = 0, -1, -2, ...
    x = 4.0
    f = lambda v: np.exp(loggamma(v) - v * np.log(x))
    bent = bent_line_integral(f, 2.0, 6.0, 0.9, "left",
                              poles=(0.0, -1.0, -2.0))
    assert bent.value == pytest.approx(np.exp(-x), rel=1e-10)


def test_bent_contour_pole_guard():
    # A declared pole sitting on the upper wing ray must be rejected.
    pole = 1.0 + 4.0j + 3.0 * np.exp(1j * (0.5 * np.pi - 0.8))
    f = lambda v: 1.0 / (v - pole)
    with pytest.raises(ContourError):
        bent_line_integral(f, 1.0, 4.0, 0.8, "right", poles=(pole,))


def test_power_tail_completion():
    # f(v) = v^{-3} on Re v = 2: (1/2 pi i) int f dv = completion of the
    # truncated line; compare full straight-line integral of an analytic
    # function with known decay against truncation + fitted tail.
    f = lambda v: (v * v + 1.0) ** -2.0   # ~ |v|^{-4}
    full = line_integral(f, ContourSpec(2.0, 4000.0), panel_height=64.0)
    trunc = line_integral(f, ContourSpec(2.0, 60.0))
    tail = power_tail_integral(f, 2.0, 60.0, -4.0)
    assert (trunc.value + tail.value) == pytest.approx(full.value,
                                                       abs=1e-10)


def test_power_tail_requires_decay():
    with pytest.raises(ContourError):
        power_tail_integral(lambda v: v, 1.0, 10.0, -0.5)
