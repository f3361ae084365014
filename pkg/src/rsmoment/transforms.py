"""Spectral test function and integral transforms.

This module provides the even analytic test function family h_{T,alpha,C},
its basic spectral weights (the normalized first moment H0, the
gamma-weighted transforms used in main terms, and the Bessel transform
H_plus of the Kloosterman term), and the three Mellin-Barnes kernels F1,
F2, F3 that arise when a J-Bessel factor is opened by its Mellin
representation against a divisor-type series.

Each kernel is available in three representations:

* ``barnes``: the defining vertical-line integral of gamma-function ratios
  (absolutely convergent for Re(s) > 1/2; the line is bent beyond a central
  segment so that the factor x^v decays exponentially, and completed by a
  fitted power-law tail when x = 1 where no oscillation is present);
* ``hypergeometric``: closed forms in terms of Gauss 2F1, which also give
  the meromorphic continuation in s;
* ``integral_rep``: the shifted-contour representations with the
  exponentially decaying integrand used in the error-term analysis
  (F3's barnes form already has this property, so only barnes and
  hypergeometric are distinct for F3).

All representations agree on their common domains; cross-checking them is
part of the package's verification suite.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .contour import (
    ContourError,
    ContourSpec,
    QuadratureResult,
    bent_line_integral,
    line_integral,
    power_tail_integral,
)
from .special import (
    SpecialFunctionError,
    bessel_j,
    gamma_ratio,
    hyp2f1,
    loggamma,
)

__all__ = [
    "TestFunction",
    "h_eval",
    "H0",
    "H_weight",
    "H_plus",
    "F1",
    "F2",
    "F3",
    "bessel_j_contour",
]

_TWO_PI = 2.0 * np.pi

# Default pole-separating offset for Barnes abscissas ("-Re(s) - eps").
DEFAULT_EPS = 0.1
# Wing angle (from vertical) for bent Barnes contours.
BARNES_WING_ANGLE = 1.25
# Half-integer-order rejection window for the Maass-type weights/kernels.
HALF_INTEGER_TOL = 1e-6
# |nu| below which the x<1 hypergeometric form of F1 is evaluated by
# even-in-nu extrapolation from the ring |nu| = NU_EXTRAP_DELTA.
NU_EXTRAP_BAND = 1.5e-3
NU_EXTRAP_DELTA = 0.02


@dataclass(frozen=True)
class TestFunction:
    """Even analytic spectral weight concentrated near r = +-T.

    h(t) = (e^{-((t-T)/T^alpha)^2} + e^{-((t+T)/T^alpha)^2})
           * (t^2 + 1/4) / (t^2 + C).

    The factor (t^2 + 1/4) makes h vanish at t = +-i/2; the denominator
    poles sit at t = +-i sqrt(C), far outside the strip |Im t| <= 1/2 + eps
    for C > 1.  alpha controls the window width T^alpha.
    """

    __test__ = False    # not a unit-test container despite the name

    T: float
    alpha: float = 0.5
    C: float = 100.0

    def __post_init__(self):
        if self.T < 1.0:
            raise ValueError("TestFunction requires T >= 1")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("TestFunction requires alpha in (0, 1]")
        if self.C <= 1.0:
            raise ValueError("TestFunction requires C > 1")

    @property
    def width(self):
        return self.T ** self.alpha

    @property
    def support_height(self):
        """Truncation height: the Gaussian factor is < 1e-43 beyond it."""
        return self.T + 10.0 * self.width

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        scalar = t.ndim == 0
        w = self.width
        denom = t * t + self.C
        if np.any(np.abs(denom) < 1e-12):
            raise ValueError("test function pole at t = +-i sqrt(C)")
        g = np.exp(-(((t - self.T) / w) ** 2)) + \
            np.exp(-(((t + self.T) / w) ** 2))
        out = g * (t * t + 0.25) / denom
        return out.item() if scalar else out


def h_eval(hf, t):
    """Evaluate the test function at (possibly complex) t."""
    return hf(t)


def _real_line_integral(f, R, points_per_unit=6.0, min_order=24):
    """integral_{-R}^{R} f(r) dr by composite Gauss-Legendre panels."""
    n_panels = max(4, int(np.ceil(R)))
    order = max(min_order, int(np.ceil(2.0 * R * points_per_unit / n_panels)))
    x, w = np.polynomial.legendre.leggauss(min(order, 96))
    edges = np.linspace(-R, R, n_panels + 1)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    r = (mid + half * x[None, :]).ravel()
    ww = (half * w[None, :]).ravel()
    return np.sum(np.asarray(f(r)) * ww)


def H0(hf):
    """(1/pi^2) * integral h(r) r tanh(pi r) dr over the real line."""
    val = _real_line_integral(
        lambda r: hf(r).real * r * np.tanh(np.pi * r), hf.support_height)
    return float(np.real(val)) / (np.pi * np.pi)


def _check_nu_not_half_integer(nu, where):
    nu = complex(nu)
    m = np.round(2.0 * nu.real)
    if abs(nu.imag) < HALF_INTEGER_TOL and \
            abs(2.0 * nu.real - m) < 2.0 * HALF_INTEGER_TOL and \
            (abs(nu) >= NU_EXTRAP_BAND or where == "H_weight"):
        raise ValueError(
            "%s: order nu within %g of a half-integer is not supported"
            % (where, HALF_INTEGER_TOL))


def H_weight(s, hf, k=None, nu=None, sigma_u=None):
    """Gamma-weighted spectral transform appearing in the main term.

    Exactly one of k (holomorphic mode, positive integer weight) and nu
    (real-analytic mode, spectral type) must be given.

    Holomorphic mode (real-line integral):
        (1/pi^2) * int h(r) r tanh(pi r)
            * Gamma(1-s+(k-1)/2+ir) Gamma(1-s+(k-1)/2-ir)
            / (Gamma(s+(k-1)/2+ir) Gamma(s+(k-1)/2-ir)) dr.

    Real-analytic mode (vertical-line integral, 1/2 <= Re s < sigma_u < 3/2):
        (4/pi) * (1/2 pi i) int_{(sigma_u)} h(u/i) u
            * cos(pi(s-u))/cos(pi u)
            * Gamma(1-s-nu+u) Gamma(1-s+nu+u)
            / (Gamma(s+nu+u) Gamma(s-nu+u)) du.
    The formula is even in nu and requires nu away from half-integers.
    """
    s = complex(s)
    if (k is None) == (nu is None):
        raise ValueError("H_weight: give exactly one of k or nu")
    if k is not None:
        if k != int(k) or k < 1:
            raise ValueError("H_weight: k must be a positive integer")
        half = (k - 1) / 2.0

        def f(r):
            ratio = gamma_ratio(
                [1.0 - s + half + 1j * r, 1.0 - s + half - 1j * r],
                [s + half + 1j * r, s + half - 1j * r])
            return hf(r) * r * np.tanh(np.pi * r) * ratio

        return complex(_real_line_integral(f, hf.support_height)) \
            / (np.pi * np.pi)

    nu = complex(nu)
    _check_nu_not_half_integer(nu, "H_weight")
    if sigma_u is None:
        sigma_u = s.real + 0.35
        # Keep cos(pi u) zeros (u in Z + 1/2) safely off the line.
        if abs(sigma_u - np.round(sigma_u - 0.5) - 0.5) < 0.05:
            sigma_u += 0.07
    if not (0.5 <= s.real < sigma_u < 1.5):
        raise ValueError("H_weight: need 1/2 <= Re s < sigma_u < 3/2")

    def f(u):
        ratio = gamma_ratio([1.0 - s - nu + u, 1.0 - s + nu + u],
                            [s + nu + u, s - nu + u])
        return hf(u / 1j) * u * np.cos(np.pi * (s - u)) \
            / np.cos(np.pi * u) * ratio

    spec = ContourSpec(sigma_u, hf.support_height + abs(s.imag) + 2.0)
    res = line_integral(f, spec)
    return complex(res.value) * 4.0 / np.pi


def bessel_j_contour(order2u, x, sigma=0.25):
    """J_{2u}(x) by its Mellin representation
    (1/2 pi i) int_{(sigma)} Gamma(u+v)/Gamma(1+u-v) (x/2)^{-2v} dv,
    -Re(u) < sigma < 1/2.

    The vertical line is followed up to just past the stationary-phase
    height ~x/2 and then bent left, where the gamma ratio decays
    super-exponentially; no poles (all lie on Re(v) <= -Re(u)) are swept.
    """
    u = complex(order2u) / 2.0
    x = float(x)
    if x <= 0:
        raise ValueError("bessel_j_contour: requires x > 0")
    if not -u.real < sigma < 0.5:
        raise ValueError("bessel_j_contour: need -Re(u) < sigma < 1/2")
    L = np.log(0.5 * x)
    B = max(abs(u.imag) + 2.0, 0.75 * x + 8.0)
    f = lambda v: np.exp(loggamma(u + v) - loggamma(1.0 + u - v)
                         - 2.0 * v * L)
    poles = tuple(-u - m for m in range(3))
    return bent_line_integral(f, sigma, B, 1.1, "left",
                              t_max=400.0 + 2.0 * x, poles=poles)


def H_plus(x, hf, form="real_line", sigma_u=0.2):
    """Bessel transform of the test function,
    H_plus(x) = (2i/pi) * int J_{2it}(x) h(t) t / cosh(pi t) dt
              = 4 * (1/2 pi i) int_{(sigma_u)} J_{2u}(x) h(u/i)
                    u / cos(pi u) du   (0 < sigma_u < 1/4).
    """
    x = float(x)
    if x <= 0:
        raise ValueError("H_plus: requires x > 0")
    if form == "real_line":
        def f(t):
            t = t + 0j
            return bessel_j(2j * t, x) * hf(t) * t / np.cosh(np.pi * t)

        val = _real_line_integral(f, hf.support_height,
                                  points_per_unit=8.0)
        return complex(2j / np.pi * val)
    if form == "contour":
        if not 0.0 < sigma_u < 0.25:
            raise ValueError("H_plus: need 0 < sigma_u < 1/4")

        def f(u):
            return bessel_j(2.0 * u, x) * hf(u / 1j) * u / np.cos(np.pi * u)

        spec = ContourSpec(sigma_u, hf.support_height)
        return complex(4.0 * line_integral(f, spec).value)
    raise ValueError("H_plus: form must be 'real_line' or 'contour'")


# ---------------------------------------------------------------------------
# F-kernels


def _barnes_balanced(f, sigma_v, x, im_scale, s):
    """Evaluate (1/2 pi i) int f(v) x^v dv for an integrand f(v) x^v whose
    gamma part has exactly balanced exponential order (modulus ~
    |Im v|^{-2 Re s}, no oscillation when x = 1).

    x != 1: central vertical segment plus wings bent toward decay of x^v.
    x == 1: truncated vertical line completed by a fitted power tail with
    exponent -2s.
    """
    g = lambda v: f(v) * np.exp(v * np.log(x))
    B = 2.0 + im_scale
    if x == 1.0:
        V = max(140.0, 4.0 * B)
        spec = ContourSpec(sigma_v, V)
        main = line_integral(g, spec, max_refine=3)
        tail = power_tail_integral(f, sigma_v, V, -2.0 * s, n_fit=6)
        return QuadratureResult(main.value + tail.value,
                                main.tail_estimate + tail.tail_estimate,
                                main.nodes_used + tail.nodes_used)
    side = "left" if x > 1.0 else "right"
    rate = abs(np.log(x)) * np.sin(BARNES_WING_ANGLE)
    t_max = min(12000.0, 40.0 / max(rate, 1e-3) + 200.0)
    return bent_line_integral(g, sigma_v, B, BARNES_WING_ANGLE, side,
                              nodes=64, t_max=t_max)


def _check_kernel_args(s, u, x, representation):
    s, u, x = complex(s), complex(u), float(x)
    if x <= 0:
        raise ValueError("kernel argument x must be positive")
    if representation == "barnes":
        # On a straight line the integrand only decays like |v|^{-2 Re s},
        # so x = 1 needs Re(s) > 1/2; for x != 1 the bent wings give
        # exponential decay and the boundary Re(s) = 1/2 is admissible.
        if s.real < 0.5 or (s.real <= 0.5 and x == 1.0):
            raise ValueError("barnes representation requires Re(s) > 1/2 "
                             "(Re(s) >= 1/2 when x != 1)")
    if representation == "integral_rep" and s.real < 0.5:
        raise ValueError("integral_rep requires Re(s) >= 1/2")
    return s, u, x


def _f1_hyp(s, u, nu, x):
    if x > 1.0:
        pref = gamma_ratio(
            [1.0 - s - nu + u, 1.0 - s + nu + u],
            [0.5 - s + u, 0.5 + s - u, 1.0 + 2.0 * u])
        return pref * x ** (-u) * hyp2f1(
            1.0 - s - nu + u, 1.0 - s + nu + u, 1.0 + 2.0 * u, 1.0 / x)
    if x == 1.0:
        return gamma_ratio(
            [2.0 * s - 1.0, 1.0 - s - nu + u, 1.0 - s + nu + u],
            [0.5 + s - u, 0.5 - s + u, s + nu + u, s - nu + u])
    # 0 < x < 1: sum of +-nu mirror terms, singular as nu -> 0 termwise.
    total = 0.0 + 0.0j
    for eps_nu in (nu, -nu):
        pref = -gamma_ratio([eps_nu, 1.0 - s - eps_nu + u],
                            [0.5 - eps_nu, s + eps_nu + u]) \
            / (2.0 ** (1.0 - 2.0 * eps_nu) * np.sqrt(np.pi))
        total += pref * x ** (1.0 - s - eps_nu) * hyp2f1(
            1.0 - s - eps_nu + u, 1.0 - s - eps_nu - u,
            1.0 - 2.0 * eps_nu, x)
    return total


def _f1_hyp_dispatch(s, u, nu, x):
    """x<1 closed form with even-in-nu extrapolation through nu ~ 0."""
    if x >= 1.0 or abs(nu) >= NU_EXTRAP_BAND:
        if x < 1.0:
            _check_nu_not_half_integer(nu, "F1 hypergeometric (x<1)")
        return _f1_hyp(s, u, nu, x)
    # F1 is even analytic in nu; fit a quadratic in nu^2 on a small ring.
    d = NU_EXTRAP_DELTA
    nodes = np.array([d, np.sqrt(2.0) * d, 2.0 * d])
    vals = np.array([_f1_hyp(s, u, nn, x) for nn in nodes])
    V = np.vander(nodes ** 2, 3, increasing=True)
    coef = np.linalg.solve(V, vals)
    t = nu * nu
    return coef[0] + coef[1] * t + coef[2] * t * t


def F1(s, u, nu, x, representation="hypergeometric", eps=DEFAULT_EPS):
    """Mellin-Barnes kernel of the same-sign shifted terms.

    barnes (Re s > 1/2):
        (1/2 pi i) int_{(-Re s - eps)} Gamma(u+v)/Gamma(1+u-v)
            * Gamma(1-s-v-nu) Gamma(1-s-v+nu)
            / (Gamma(1/2+s+v) Gamma(1/2-s-v)) x^v dv.
    hypergeometric: 2F1 closed forms on x>1 / x=1 / x<1 (meromorphic
        continuation in s); near-degenerate small |nu| on x<1 is handled
        by even-in-nu extrapolation.
    integral_rep (1/2 <= Re s < Re u): shifted-contour forms with
        exponentially decaying integrands.
    """
    s, u, x = _check_kernel_args(s, u, x, representation)
    nu = complex(nu)
    if representation == "hypergeometric":
        return complex(_f1_hyp_dispatch(s, u, nu, x))
    if representation == "barnes":
        sigma_v = -s.real - eps
        if sigma_v <= -u.real:
            raise ValueError("F1 barnes: need Re(u) > Re(s) + eps")

        def f(v):
            return gamma_ratio(
                [u + v, 1.0 - s - v - nu, 1.0 - s - v + nu],
                [1.0 + u - v, 0.5 + s + v, 0.5 - s - v])

        im_scale = max(abs(s.imag), abs(u.imag), abs(nu.imag))
        return complex(_barnes_balanced(f, sigma_v, x, im_scale, s).value)
    if representation == "integral_rep":
        if x > 1.0:
            if s.real >= u.real:
                raise ValueError(
                    "F1 integral_rep (x>1): requires Re(s) < Re(u)")
            sigma_v = 0.5 * (s.real - 1.0 + u.real)
            pref = np.cos(np.pi * (s - u)) / np.pi * gamma_ratio(
                [1.0 - s - nu + u], [s + nu + u]) * x ** (1.0 - s + nu)
            lnxm1 = np.log(x - 1.0)

            def f(v):
                return gamma_ratio([1.0 - s + nu + v, s + nu + v, u - v],
                                   [1.0 + u + v]) \
                    * np.exp((s - nu - 1.0 - v) * lnxm1)

            spec = ContourSpec(sigma_v, 20.0 + 2.0 * max(
                abs(s.imag), abs(u.imag), abs(nu.imag)))
            return complex(pref * line_integral(f, spec).value)
        if x == 1.0:
            return complex(_f1_hyp(s, u, nu, 1.0))
        # 0 < x < 1: two mirror terms over a common separating contour.
        _check_nu_not_half_integer(nu, "F1 integral_rep (x<1)")
        if s.real - 1.0 >= -u.real:
            raise ValueError(
                "F1 integral_rep (x<1): no straight separating contour; "
                "need Re(u) < 1 - Re(s)")
        sigma_v = 0.5 * (s.real - 1.0 - u.real)
        # The separating window (Re s - 1, -Re u) can be narrow; refine the
        # panels to resolve the near-pole ridge around the real axis.
        width = (1.0 - s.real - u.real)
        panel = min(1.0, max(0.02, width / 2.0))
        ln1mx = np.log(1.0 - x)
        height = 18.0 + 2.0 * max(abs(s.imag), abs(u.imag), abs(nu.imag))
        total = 0.0 + 0.0j
        for eps_nu in (nu, -nu):
            pref = -np.sin(np.pi * (s + eps_nu + u)) \
                / (2.0 * np.pi * np.sin(np.pi * eps_nu)) \
                * gamma_ratio([], [s - eps_nu - u, s - eps_nu + u]) \
                * (x / (1.0 - x)) ** (1.0 - s - eps_nu)

            def f(v, en=eps_nu):
                return gamma_ratio(
                    [u - v, -u - v, s - en + v, 1.0 - s - en + v], []) \
                    * np.exp(-v * ln1mx)

            spec = ContourSpec(sigma_v, height)
            total += pref * line_integral(f, spec, panel_height=panel,
                                          max_refine=4).value
        return complex(total)
    raise ValueError("F1: unknown representation %r" % (representation,))


def _f2_hyp(s, u, k, x):
    half = (k - 1) / 2.0
    phase = -(1j ** k)
    if x > 1.0:
        pref = phase * gamma_ratio([1.0 - s + u + half],
                                   [s - u + half, 1.0 + 2.0 * u])
        return pref * x ** (-u) * hyp2f1(
            1.0 - s + u + half, 1.0 - s + u - half, 1.0 + 2.0 * u, 1.0 / x)
    if x == 1.0:
        return phase * np.sin(np.pi * (s + u - half)) / np.pi * gamma_ratio(
            [2.0 * s - 1.0, 1.0 - s - u + half, 1.0 - s + u + half],
            [s + u + half, s - u + half])
    pref = phase * gamma_ratio([1.0 - s + u + half], [s + u - half]) \
        / gamma_ratio([float(k)], [])
    return pref * x ** (1.0 - s + half) * hyp2f1(
        1.0 - s + u + half, 1.0 - s - u + half, float(k), x)


def F2(s, u, k, x, representation="hypergeometric", eps=DEFAULT_EPS):
    """Holomorphic-weight analogue of F1 (integer weight k >= 1).

    barnes (Re s > 1/2):
        -i^k (1/2 pi i) int_{(-Re s - eps)} Gamma(u+v)/Gamma(1+u-v)
            * Gamma(1-s-v+(k-1)/2)/Gamma(s+v+(k-1)/2) x^v dv.
    For even k, F1(s, u, (k-1)/2; x) = F2(s, u, k; x).
    """
    s, u, x = _check_kernel_args(s, u, x, representation)
    if k != int(k) or k < 1:
        raise ValueError("F2: k must be a positive integer")
    k = int(k)
    half = (k - 1) / 2.0
    if representation == "hypergeometric":
        return complex(_f2_hyp(s, u, k, x))
    if representation == "barnes":
        sigma_v = -s.real - eps
        if sigma_v <= -u.real:
            raise ValueError("F2 barnes: need Re(u) > Re(s) + eps")
        phase = -(1j ** k)

        def f(v):
            return phase * gamma_ratio(
                [u + v, 1.0 - s - v + half],
                [1.0 + u - v, s + v + half])

        im_scale = max(abs(s.imag), abs(u.imag))
        return complex(_barnes_balanced(f, sigma_v, x, im_scale, s).value)
    if representation == "integral_rep":
        phase = -(1j ** k)
        height = 18.0 + 2.0 * max(abs(s.imag), abs(u.imag))
        if x > 1.0:
            lo = s.real - 1.0 - half
            sigma_v = 0.5 * (max(lo, -height) + u.real) \
                if lo < u.real else None
            if sigma_v is None:
                raise ValueError("F2 integral_rep: empty contour interval")
            pref = phase * np.sin(np.pi * (s - u + half)) / np.pi \
                * gamma_ratio([1.0 - s + u - half], [s + u + half]) \
                * (x / (x - 1.0)) ** (1.0 - s + half)
            lnxm1 = np.log(x - 1.0)

            def f(v):
                return gamma_ratio([1.0 - s + half + v, s + half + v, u - v],
                                   [1.0 + u + v]) * np.exp(-v * lnxm1)

            spec = ContourSpec(sigma_v, 20.0 + 2.0 * max(
                abs(s.imag), abs(u.imag)))
            return complex(pref * line_integral(f, spec).value)
        if x == 1.0:
            return complex(_f2_hyp(s, u, k, 1.0))
        lo = s.real - 1.0 - half
        hi = -abs(u.real)
        if lo >= hi:
            raise ValueError(
                "F2 integral_rep (x<1): empty contour interval")
        sigma_v = 0.5 * (max(lo, -6.0) + hi)
        panel = min(1.0, max(0.02, (hi - max(lo, -6.0)) / 2.0))
        pref = phase * np.sin(np.pi * (s + u - half)) / np.pi \
            * gamma_ratio([], [s - u + half, s + u + half]) \
            * (x / (1.0 - x)) ** (1.0 - s + half)
        ln1mx = np.log(1.0 - x)

        def f(v):
            return gamma_ratio(
                [u - v, -u - v, s + half + v, 1.0 - s + half + v], []) \
                * np.exp(-v * ln1mx)

        spec = ContourSpec(sigma_v, height)
        return complex(pref * line_integral(f, spec, panel_height=panel,
                                            max_refine=4).value)
    raise ValueError("F2: unknown representation %r" % (representation,))


def F3(s, u, nu, x, representation="hypergeometric", eps=DEFAULT_EPS):
    """Mellin-Barnes kernel of the opposite-sign shifted terms.

    barnes:
        (1/2 pi i) int_{(sigma_v)} Gamma(u-v) Gamma(1-s-nu+v)
            Gamma(1-s+nu+v) / Gamma(1+u+v) x^v dv,
    with sigma_v separating the pole families (Re(s)-1 < sigma_v < Re(u)
    when nonempty).  The integrand decays like e^{-pi |Im v|}, so a
    truncated straight line suffices.  hypergeometric:
        Gamma(1-s-nu+u) Gamma(1-s+nu+u)/Gamma(1+2u) x^u
            * 2F1(1-s-nu+u, 1-s+nu+u; 1+2u; -x);
    satisfies |F3| << x^{-Re u} as x grows.
    """
    s, u, x = _check_kernel_args(s, u, x, representation)
    nu = complex(nu)
    if representation == "hypergeometric":
        return complex(gamma_ratio(
            [1.0 - s - nu + u, 1.0 - s + nu + u], [1.0 + 2.0 * u])
            * x ** u * hyp2f1(1.0 - s - nu + u, 1.0 - s + nu + u,
                              1.0 + 2.0 * u, -x))
    if representation == "barnes":
        lo = s.real - 1.0 + abs(nu.real)
        hi = u.real
        if lo < hi:
            sigma_v = 0.5 * (lo + hi)
        else:
            sigma_v = s.real + eps
            if sigma_v >= u.real:
                raise ValueError("F3 barnes: no separating straight line")

        def f(v):
            return gamma_ratio([u - v, 1.0 - s - nu + v, 1.0 - s + nu + v],
                               [1.0 + u + v]) * np.exp(v * np.log(x))

        height = 18.0 + 2.0 * max(abs(s.imag), abs(u.imag), abs(nu.imag)) \
            + 1.5 * abs(np.log(x))
        spec = ContourSpec(sigma_v, height)
        return complex(line_integral(f, spec).value)
    raise ValueError("F3: unknown representation %r" % (representation,))
