"""Moment-side term assembly for spectral first moments.

This module evaluates every term of the moment identity: the main term M,
the constant-term contributions M+/M-, the shifted-convolution error terms
L1+/L1-/L2, the shifted Dirichlet series D they integrate against, and the
per-q objects (M_q+/-, M_q, L_{q,1}+/-, L_{q,2}) of the single-q
decomposition, together with the direct Kloosterman-Bessel series L_q used
to cross-validate that decomposition.

Slowly convergent divisor-type series are evaluated as an exact head plus
an analytic tail: the coefficient density is fitted by least squares on a
log-polynomial basis over the top half of the head window, and the fitted
density is summed in closed form (Euler-Maclaurin for sums of
log-powers against m^-w).  The resulting approximant is analytic in the
Mellin variable, so contour-shift invariance of the double integrals is
preserved exactly; the fit residual enters only the reported tail
estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import (
    DirichletCharacter,
    dirichlet_L,
    divisors,
    euler_phi,
    factorize,
    gauss_sum,
    kloosterman,
    sigma_general,
    twisted_gauss_sum,
)
from .contour import ContourSpec, line_integral
from .special import (
    EULER_GAMMA,
    bessel_j,
    cgamma,
    digamma,
    hurwitz_zeta,
    loggamma,
    gamma_ratio,
    zeta,
)
from .transforms import H0, H_weight, _real_line_integral

__all__ = [
    "MomentError",
    "AutomorphicForm",
    "MomentTermReport",
    "LqDecomposition",
    "eisenstein_level1",
    "holomorphic_delta",
    "maass_form",
    "zero_form",
    "L_q_direct",
    "L_q_decomposed",
    "shifted_dirichlet_D",
    "main_term_M",
    "extra_terms_Mpm",
    "error_term_L1_plus",
    "error_term_L1_minus",
    "error_term_L2",
    "assemble_rhs",
]

_TWO_PI = 2.0 * np.pi
_LOG_2PI = np.log(2.0 * np.pi)

# Dispatch radius |2s - 1| below which the removable-singularity (digamma)
# formulas replace the generic main-term branch.
S_HALF_RADIUS = 1e-4
# |nu| below which the +-nu mirror terms of the L1- contour representation
# are evaluated by even-in-nu extrapolation from a small ring.
NU_SMALL_BAND = 0.02
NU_SMALL_DELTA = 0.05
# Default head length for divisor-type series.
DEFAULT_M_MAX = 30000
# Kernel argument beyond which the large-x asymptotic expansion replaces
# the exact hypergeometric evaluation in the q-decomposition series.
ASYMPTOTIC_X = 30.0
ASYMPTOTIC_TERMS = 10


class MomentError(ValueError):
    """Raised for domain violations in moment-term evaluations."""


# ---------------------------------------------------------------------------
# Automorphic form inputs


@dataclass
class AutomorphicForm:
    """An automorphic input phi with normalized coefficients C_phi(m).

    kind is one of "holomorphic" (weight `weight`, nu = (k-1)/2),
    "maass" (spectral type `nu`, purely imaginary for tempered forms), or
    "eisenstein_level1" (the level-1 completed Eisenstein series at
    parameter t, nu = i t).  `reflection` is the coefficient symmetry
    factor c_phi(-1) (0 for holomorphic forms).  `coeff_vector`, when
    given, returns the numpy array [C_phi(1), ..., C_phi(M)].
    """

    kind: str
    level: int
    character: DirichletCharacter
    coefficients: object
    reflection: complex = 1.0
    weight: int | None = None
    nu: complex = 0j
    t: float | None = None
    coeff_vector: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind not in ("holomorphic", "maass", "eisenstein_level1"):
            raise MomentError("unknown form kind %r" % (self.kind,))
        if self.kind == "holomorphic":
            if self.weight is None or self.weight < 1:
                raise MomentError("holomorphic forms need a positive weight")
            self.nu = complex((self.weight - 1) / 2.0)
        if self.kind == "eisenstein_level1" and self.level != 1:
            raise MomentError("eisenstein_level1 requires level 1")

    @property
    def is_cuspidal(self):
        return self.kind in ("holomorphic", "maass")

    def constant_term(self, sign):
        """c_phi^+ (sign=+1) or c_phi^- (sign=-1); zero for cusp forms."""
        if self.is_cuspidal:
            return 0.0 + 0.0j
        t = self.t
        if abs(t) < 1e-12:
            raise MomentError(
                "the individual constant terms diverge at t = 0; "
                "use the combined s = 1/2 evaluation")
        return complex(0.5 * cgamma(0.5 + 1j * sign * t)
                       * zeta(1.0 + 2j * sign * t)
                       * np.exp(-(0.5 + 1j * sign * t) * np.log(np.pi)))

    def coeff_array(self, M):
        """numpy array of C_phi(1..M), cached."""
        M = int(M)
        have = self._cache.get("coeff")
        if have is not None and have.size >= M:
            return have[:M]
        if self.coeff_vector is not None:
            arr = np.asarray(self.coeff_vector(M), dtype=complex)
        else:
            arr = np.array([self.coefficients(m) for m in range(1, M + 1)],
                           dtype=complex)
        self._cache["coeff"] = arr
        return arr


def _sigma_power_array(z, M):
    """sigma_z(m) = sum_{d | m} d^z for m = 1..M, by divisor sieve."""
    z = complex(z)
    out = np.zeros(M + 1, dtype=complex)
    d = np.arange(1, M + 1)
    powers = np.exp(z * np.log(d))
    for dd in range(1, M + 1):
        out[dd::dd] += powers[dd - 1]
    return out[1:]


def eisenstein_level1(t):
    """phi = (1/2) E*(z, 1/2 + it): C_phi(m) = sigma_{-2it}(m) m^{it},
    nu = it, c_phi(-1) = 1, level 1 with the trivial character."""
    t = float(t)

    def coeff(m):
        m = int(m)
        return sum((m / (d * d)) ** (1j * t) for d in divisors(m))

    def coeff_vec(M):
        m = np.arange(1, M + 1)
        return _sigma_power_array(-2j * t, M) * np.exp(1j * t * np.log(m))

    return AutomorphicForm(
        kind="eisenstein_level1", level=1,
        character=DirichletCharacter.trivial(1),
        coefficients=coeff, coeff_vector=coeff_vec,
        reflection=1.0, nu=1j * t, t=t)


def _tau_block(limit, x0):
    """Coefficients of eta^24/q scaled by x0^m, computed to index `limit`.

    The geometric scaling keeps the block of interest near the top of the
    float64 dynamic range; tau(m) spans ~m^6, so an unscaled convolution
    loses all small-m accuracy to FFT roundoff."""
    from scipy.signal import fftconvolve
    e = np.zeros(limit + 1)
    e[0] = 1.0
    k = 1
    while k * (3 * k - 1) // 2 <= limit:
        for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if g <= limit:
                e[g] = (-1.0) ** k * x0 ** g
        k += 1

    def mul(a, b):
        return fftconvolve(a, b)[:limit + 1]

    p2 = mul(e, e)
    p4 = mul(p2, p2)
    p8 = mul(p4, p4)
    p16 = mul(p8, p8)
    return mul(p16, p8)


def _ramanujan_tau(M):
    """tau(1..M) from the eta^24 product, by blockwise scaled convolution
    (each dyadic block uses its own scaling so FFT roundoff stays relative
    to that block's own coefficient size)."""
    out = np.zeros(M)
    A = 32
    lo = 0  # exclusive, in tau index (1-based m)
    while lo < M:
        hi = min(2 * A, M)
        limit = hi - 1  # eta^24/q exponent range 0..hi-1
        x0 = np.exp(-6.0 / A)
        block = _tau_block(limit, x0)
        m = np.arange(lo + 1, hi + 1)
        out[lo:hi] = block[lo:hi] * np.exp(-np.log(x0) * (m - 1))
        lo = hi
        A *= 2
    return out


def holomorphic_delta():
    """The weight-12 level-1 cusp form Delta with C_phi(m) = tau(m)/m^{11/2}."""
    store = {}

    def tau_arr(M):
        have = store.get("tau")
        if have is None or have.size < M:
            store["tau"] = _ramanujan_tau(max(M, 1024))
        return store["tau"][:M]

    def coeff(m):
        m = int(m)
        return complex(tau_arr(m)[m - 1] / m ** 5.5)

    def coeff_vec(M):
        m = np.arange(1, M + 1)
        return tau_arr(M) / m ** 5.5 + 0j

    return AutomorphicForm(
        kind="holomorphic", level=1,
        character=DirichletCharacter.trivial(1),
        coefficients=coeff, coeff_vector=coeff_vec,
        reflection=0.0, weight=12)


def maass_form(nu, coefficients, reflection=1.0, level=1, coeff_vector=None):
    """A Maass-form input of type nu with user-supplied coefficients."""
    return AutomorphicForm(
        kind="maass", level=level,
        character=DirichletCharacter.trivial(level),
        coefficients=coefficients, coeff_vector=coeff_vector,
        reflection=complex(reflection), nu=complex(nu))


def zero_form(level=1):
    """The zero coefficient input (all C_phi(m) = 0)."""
    return maass_form(0.21j, lambda m: 0.0,
                      coeff_vector=lambda M: np.zeros(M, dtype=complex))


# ---------------------------------------------------------------------------
# Divisor-series heads and analytic fitted tails


def _eis_twisted_value(t, z, j, d):
    """Exact sum_{m >= 1} sigma_{-2it}(m) m^{it} e(m j / d) m^{-z}.

    Writing the coefficient as sum_{ab=m} a^{-it} b^{it} and splitting a, b
    into residues mod d gives a bilinear form in Hurwitz zeta values:
    d^{-2z} sum_{alpha, beta} e(alpha beta j / d)
    zeta(z + it, alpha/d) zeta(z - it, beta/d)."""
    z = complex(z)
    za = np.array([hurwitz_zeta(z + 1j * t, al / d) for al in range(1, d + 1)])
    zb = np.array([hurwitz_zeta(z - 1j * t, be / d) for be in range(1, d + 1)])
    ab = np.multiply.outer(np.arange(1, d + 1), np.arange(1, d + 1))
    phase = np.exp(2j * np.pi * j * ab / d)
    return np.exp(-2.0 * z * np.log(d)) * (za @ phase @ zb)


def _eis_lq_tail(form, q, shift, z, head_coeffs):
    """Exact tail sum_{m > A} C_phi(m) c_q(m + shift) m^{-z} for the
    level-1 Eisenstein input, A = len(head_coeffs), valid for Re(z) > 1.

    Uses c_q(x) = sum_{d | q} mu(q/d) sum_{j mod d} e(j x / d) and the
    exact evaluation of each additively twisted full sum."""
    from .arithmetic import mobius
    t = form.t
    z = complex(z)
    full = 0.0 + 0.0j
    for d in divisors(q):
        mu = mobius(q // d)
        if mu == 0:
            continue
        for j in range(d):
            full += mu * np.exp(2j * np.pi * j * shift / d) \
                * _eis_twisted_value(t, z, j, d)
    A = len(head_coeffs)
    m = np.arange(1, A + 1)
    return full - np.sum(head_coeffs * np.exp(-z * np.log(m)))


def _gauss_table(chi, q):
    """c_{chi|q}(r) for r = 0..q-1 (the twisted Ramanujan sums)."""
    return np.array([twisted_gauss_sum(chi, q, r) for r in range(q)],
                    dtype=complex)


def _sigma_general_vec(s, chi_star, Mlevel, m_max):
    """sigma_{1-2s}(m; chi*, M) for m = 1..m_max."""
    if Mlevel == 1 and chi_star.modulus == 1:
        return _sigma_power_array(1.0 - 2.0 * complex(s), m_max)
    return np.array(
        [sigma_general(s, m, chi_star, Mlevel).value
         for m in range(1, m_max + 1)], dtype=complex)


def _log_tail_sums(w, A):
    """sum_{m > A} ln^j(m) m^{-w} for j = 0, 1, 2; w is a complex array.

    Midpoint Euler-Maclaurin: the sum equals the integral from A + 1/2
    plus (1/24) f'(A + 1/2) up to O(f''') corrections, which are far below
    the fit residual for the head lengths used here.
    """
    w = np.asarray(w, dtype=complex)
    y = A + 0.5
    L = np.log(y)
    W = w - 1.0
    yW = np.exp(-W * L)        # y^{-(w-1)}
    I0 = yW / W
    I1 = yW * (L / W + 1.0 / W ** 2)
    I2 = yW * (L * L / W + 2.0 * L / W ** 2 + 2.0 / W ** 3)
    f0p = -w * np.exp(-(w + 1.0) * L)
    f1p = np.exp(-(w + 1.0) * L) * (1.0 - w * L)
    f2p = np.exp(-(w + 1.0) * L) * (2.0 * L - w * L * L)
    return np.stack([I0 + f0p / 24.0, I1 + f1p / 24.0, I2 + f2p / 24.0])


def _fit_density(a, osc, lo, hi, nbasis=3):
    """LS fit of a(m) m^{-osc} ~ c0 + c1 ln m + c2 ln^2 m on m in (lo, hi].

    Always returns three coefficients; basis functions beyond `nbasis` get
    coefficient zero.  Cusp-form coefficient densities are mean-zero
    fluctuations, for which the higher log terms only overfit noise, so
    those callers use nbasis=1."""
    m = np.arange(lo + 1, hi + 1)
    lnm = np.log(m)
    g = a[lo:hi] * np.exp(-complex(osc) * lnm)
    basis = np.stack([np.ones_like(lnm), lnm, lnm * lnm], axis=1)
    coef, *_ = np.linalg.lstsq(basis[:, :nbasis], g, rcond=None)
    return np.concatenate([coef, np.zeros(3 - nbasis, dtype=complex)])


def _series_with_tail(a, w, osc=0j, nbasis=3):
    """sum_m a(m) m^{-w} over m >= 1: exact head over the length of `a`
    plus the fitted-density analytic tail.  Returns (values, tail_est)."""
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    A = len(a)
    lnm = np.log(np.arange(1, A + 1))
    head = np.zeros(w.shape, dtype=complex)
    chunk = max(1, 2 ** 22 // max(w.size, 1))
    for i in range(0, A, chunk):
        E = np.exp(-np.multiply.outer(lnm[i:i + chunk], w))
        head += a[i:i + chunk] @ E
    coef = _fit_density(a, osc, A // 2, A, nbasis)
    Z = _log_tail_sums(w - complex(osc), A)
    tail = coef @ Z
    # Fluctuation estimate: compare with the fit from the next window down.
    coef2 = _fit_density(a, osc, A // 4, A // 2, nbasis)
    diff = (coef - coef2) @ Z
    est = float(np.max(np.abs(diff)))
    return head + tail, est, diff


# ---------------------------------------------------------------------------
# Double contour quadrature (outer u line against inner v line)


def _uniform_nodes(sigma, H, level, panel=2.0, order=32):
    spec = ContourSpec(sigma, H, order)
    return spec.points(panel / 2 ** level)


def _graded_nodes(sigma, H, level, fine_half=2.5, fine_panel=0.25,
                  panel=2.0, order=32):
    """Vertical-line nodes with finer panels near the real axis, for
    integrands with a pole ridge just off the contour at small |Im|."""
    x, wgl = np.polynomial.legendre.leggauss(order)
    fp = fine_panel / 2 ** level
    cp = panel / 2 ** level
    edges = [np.arange(-fine_half, fine_half + 1e-12, fp)]
    n_c = max(1, int(np.ceil((H - fine_half) / cp)))
    up = np.linspace(fine_half, H, n_c + 1)
    edges = np.concatenate([-up[::-1], edges[0][1:-1], up])
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    ys = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * wgl[None, :]).ravel()
    return sigma + 1j * ys, ws


def _double_contour(u_fn, couple_log, v_log, v_lin, u_nodes, v_nodes):
    """(1/2 pi i)^2 iterated integral of
    u_fn(u) * exp(couple_log(u, v) + v_log(v)) * v_lin(v)
    over the two vertical lines, with one panel-halving refinement.

    v_lin(v) returns (values, uncertainty values); the uncertainty channel
    is pushed through the same kernel so the reported series error carries
    the integral's own damping.  Returns (value, refinement difference,
    propagated series uncertainty)."""

    def eval_level(level):
        u, wu = u_nodes(level)
        v, wv = v_nodes(level)
        A = u_fn(u) * wu
        Lv = v_log(v)
        vals, errs = v_lin(v)
        G = vals * wv
        Ge = (np.zeros_like(G) if errs is None else errs * wv)
        total = 0.0 + 0.0j
        etotal = 0.0 + 0.0j
        chunk = max(1, 2 ** 21 // max(v.size, 1))
        for i in range(0, u.size, chunk):
            K = np.exp(couple_log(u[i:i + chunk, None], v[None, :])
                       + Lv[None, :])
            total += A[i:i + chunk] @ (K @ G)
            etotal += A[i:i + chunk] @ (K @ Ge)
        norm = 4.0 * np.pi * np.pi
        return total / norm, abs(etotal) / norm

    v0, _ = eval_level(0)
    v1, e1 = eval_level(1)
    return v1, abs(v1 - v0), e1


def _heights(s, hf, extra=0.0):
    Hu = hf.T + 8.0 * hf.width + 2.0 + abs(complex(s).imag) + extra
    return Hu, Hu + 8.0


def _avoid_cos_zero(sigma):
    """Nudge an abscissa off the zeros of cos(pi u) at half-integers."""
    if abs(sigma - round(sigma - 0.5) - 0.5) < 0.05:
        return sigma + 0.07
    return sigma


def _arith_data(form):
    """(chi, chi*, R, tau(chi*), M) for the level character of the form."""
    chi = form.character
    chi_star = chi.primitive_core()
    R = chi_star.modulus
    tau = gauss_sum(chi_star)
    return chi, chi_star, R, tau, form.level


def _pow(base, expo):
    return np.exp(complex(expo) * np.log(base))


# ---------------------------------------------------------------------------
# Shifted Dirichlet series D


def shifted_dirichlet_D(s, it, form, n, m_max=DEFAULT_M_MAX):
    """D(s, it; phi; n) = sum_m C_phi(m+n) (m+n)^nu
    sigma_{-2it}(m; chi*, M) m^{it} / m^{s + nu}, truncated at m_max.

    Absolutely convergent for Re(s) > 1."""
    s = complex(s)
    it = complex(it)
    if s.real <= 1.0:
        raise MomentError("shifted_dirichlet_D requires Re(s) > 1")
    n = int(n)
    _, chi_star, _, _, Mlevel = _arith_data(form)
    C = form.coeff_array(m_max + n)
    m = np.arange(1, m_max + 1)
    # sigma_{-2it}(.; chi*, M) is sigma_{1-2s'} at s' = 1/2 + it.
    sig = _sigma_general_vec(0.5 + it, chi_star, Mlevel, m_max)
    terms = C[n:n + m_max] * np.exp(form.nu * np.log(m + n)) * sig \
        * np.exp((it - s - form.nu) * np.log(m))
    return complex(np.sum(terms))


def _d_series_data(s, form, n, m_max):
    """Coefficients a(m) and oscillation exponent for
    D(v + 1/2, s - 1/2; phi; n) = sum_m a(m) m^{-(v + 1/2 + nu)}."""
    s = complex(s)
    nu = form.nu
    _, chi_star, _, _, Mlevel = _arith_data(form)
    C = form.coeff_array(m_max + n)
    m = np.arange(1, m_max + 1)
    sig = _sigma_general_vec(s, chi_star, Mlevel, m_max)
    a = C[n:n + m_max] * np.exp(nu * np.log(m + n)) * sig \
        * np.exp((s - 0.5) * np.log(m))
    osc = nu + (s - 0.5)
    if form.kind == "eisenstein_level1":
        osc = osc + nu
    return a, osc


# ---------------------------------------------------------------------------
# Main term M


def main_term_M(s, form, n, hf):
    """The main term M(s, phi; n) of the moment identity."""
    s = complex(s)
    n = int(n)
    if s.real < 0.5:
        raise MomentError("main_term_M requires Re(s) >= 1/2")
    chi = form.character
    Mlevel = form.level
    Cn = complex(form.coefficients(n))
    principal = chi.is_principal
    primes = [p for p, _ in factorize(Mlevel)] if Mlevel > 1 else []
    if principal and abs(2.0 * s - 1.0) < S_HALF_RADIUS:
        # Removable singularity of zeta(2s) against zeta(2-2s): the
        # digamma limit formulas at s = 1/2.
        if Cn == 0:
            return 0.0 + 0.0j
        phiM = euler_phi(Mlevel) / Mlevel
        if form.kind == "holomorphic":
            k = form.weight

            def psi_avg(r):
                return digamma(k / 2.0 + 1j * r) + digamma(k / 2.0 - 1j * r)
        else:
            nu = form.nu

            def psi_avg(r):
                return 0.5 * (digamma(0.5 + nu + 1j * r)
                              + digamma(0.5 + nu - 1j * r)
                              + digamma(0.5 - nu + 1j * r)
                              + digamma(0.5 - nu - 1j * r))

        quad = _real_line_integral(
            lambda r: hf(r).real * r * np.tanh(np.pi * r) * psi_avg(r),
            hf.support_height) / (np.pi * np.pi)
        const = sum(math.log(p) / (1.0 - 1.0 / p) for p in primes) \
            + math.log(Mlevel / (_TWO_PI ** 2 * n)) + 2.0 * EULER_GAMMA
        return complex(Cn / math.sqrt(n) * phiM * (quad + const * H0(hf)))

    Lfac = dirichlet_L(2.0 * s, chi, omit_primes=tuple(primes))
    total = Lfac * Cn * _pow(n, -s) * H0(hf)
    if principal and Cn != 0:
        pref = zeta(2.0 - 2.0 * s) * _pow(Mlevel, 1.0 - 2.0 * s) \
            * np.prod([1.0 - 1.0 / p for p in primes]) \
            * Cn * _pow(n, s - 1.0)
        if form.kind == "holomorphic":
            total += pref * np.exp((4.0 * s - 2.0) * _LOG_2PI) \
                * H_weight(s, hf, k=form.weight)
        else:
            total += -pref * np.exp((4.0 * s - 3.0) * _LOG_2PI) \
                * np.pi / np.sin(np.pi * s) * H_weight(s, hf, nu=form.nu)
    return complex(total)


# ---------------------------------------------------------------------------
# Constant-term contributions M+ / M-


def extra_terms_Mpm(s, form, n, hf):
    """(M^+, M^-): the contributions of the constant terms of phi.

    Exactly (0, 0) for cusp forms.  For the level-1 Eisenstein input the
    zeta factor of the constant term is paired with its canceling cosine
    zero so that t -> 0 stays finite at s = 1/2."""
    s = complex(s)
    n = int(n)
    if form.is_cuspidal:
        return (0.0 + 0.0j, 0.0 + 0.0j)
    if s.real < 0.5:
        raise MomentError("extra_terms_Mpm requires Re(s) >= 1/2")
    _, chi_star, R, tau, Mlevel = _arith_data(form)
    sig = sigma_general(s, n, chi_star, Mlevel).value
    out = []
    t = form.t
    for sign in (+1, -1):
        nu = 1j * sign * t
        # zc = zeta(1 +- 2it) * cos(pi (s -+ nu)); the cosine zero at
        # s = 1/2 cancels the zeta pole as t -> 0.
        if abs(t) < 1e-6:
            if abs(2.0 * s - 1.0) >= S_HALF_RADIUS:
                raise MomentError(
                    "M+- individually diverge at t = 0 for s != 1/2")
            zc = 0.5 * np.pi
        else:
            zc = zeta(1.0 + 2j * sign * t) * np.cos(np.pi * (s - nu))
        c = 1.0 - s + nu

        def f(r, c=c):
            return hf(r).real * r * np.tanh(np.pi * r) \
                * np.exp(loggamma(c + 1j * r) + loggamma(c - 1j * r))

        quad = _real_line_integral(f, hf.support_height)
        val = -zc * np.exp((2.0 * s - 2.0 - 2.0 * nu) * _LOG_2PI) \
            * _pow(R, -2.0 * s) * tau * sig * _pow(n, s - 1.0 - nu) \
            * (2.0 / np.pi ** 2) * quad
        out.append(complex(val))
    return tuple(out)


# ---------------------------------------------------------------------------
# Error terms L1+, L1-, L2


def _l1_plus_impl(s, form, n, hf, sigma_u, sigma_v, m_max):
    s = complex(s)
    nu = form.nu
    k = form.weight if form.kind == "holomorphic" else 0
    if sigma_u is None:
        sigma_u = _avoid_cos_zero(min(max(s.real, 0.5) + 0.7, 1.42))
    if sigma_v is None:
        sigma_v = min(max(s.real, 0.5) + 0.3, sigma_u - 0.15)
    if not (s.real < sigma_v < sigma_u < 1.5):
        raise MomentError("L1+ needs Re(s) < sigma_v < sigma_u < 3/2")
    if sigma_v <= 0.5:
        raise MomentError("L1+ needs sigma_v > 1/2 for D convergence")
    chi, chi_star, R, tau, _ = _arith_data(form)
    pref = -(1j ** k) * np.exp((2.0 * s - 1.0) * _LOG_2PI) \
        * _pow(R, -2.0 * s) * tau * chi_star(-1)
    a, osc = _d_series_data(s, form, n, m_max)
    nb = 3 if form.kind == "eisenstein_level1" else 1

    def u_fn(u):
        return hf(u / 1j) * u / np.cos(np.pi * u) \
            * np.cos(np.pi * (s - u + k / 2.0)) / np.pi \
            * np.exp(loggamma(1.0 - s - nu + u) - loggamma(s + nu + u))

    def couple_log(u, v):
        return loggamma(u - v) - loggamma(1.0 + u + v)

    def v_log(v):
        return loggamma(1.0 - s + nu + v) + loggamma(s + nu + v) \
            + v * np.log(n)

    def v_lin(v):
        vals, _, dv = _series_with_tail(a, v + 0.5 + nu, osc, nb)
        return vals, dv

    Hu, Hv = _heights(s, hf)
    val, diff, serr = _double_contour(
        u_fn, couple_log, v_log, v_lin,
        lambda lv: _uniform_nodes(sigma_u, Hu, lv),
        lambda lv: _uniform_nodes(sigma_v, Hv, lv))
    value = complex(4.0 * pref * val)
    tails = {"quadrature": 4.0 * abs(pref) * diff,
             "series": 4.0 * abs(pref) * serr}
    return value, tails


def error_term_L1_plus(s, form, n, hf, sigma_u=None, sigma_v=None,
                       m_max=DEFAULT_M_MAX):
    """L1+(s, phi; n): the double contour integral of the gamma kernel
    against n^v D(v + 1/2, s - 1/2; phi; n)."""
    return _l1_plus_impl(s, form, int(n), hf, sigma_u, sigma_v, m_max)[0]


def _l1_minus_series(s, form, n, hf, sigma_u):
    """L1- via the single u-integral against the F1/F2 kernel at x = m/n."""
    from .transforms import F1, F2
    s = complex(s)
    if sigma_u is None:
        sigma_u = _avoid_cos_zero(max(s.real, 0.5) + 0.7)
    _, chi_star, R, tau, Mlevel = _arith_data(form)
    sig = _sigma_general_vec(s, chi_star, Mlevel, n - 1)[::-1]  # at n - m
    coefs = [complex(form.coefficients(m)) * sig[m - 1]
             * _pow(m, s - 1.0) for m in range(1, n)]

    def kernel(u, m):
        if form.kind == "holomorphic":
            return F2(s, u, form.weight, m / n, representation="barnes")
        return F1(s, u, form.nu, m / n, representation="barnes")

    def f(u):
        u = np.atleast_1d(u)
        out = np.zeros(u.shape, dtype=complex)
        for i, uu in enumerate(u):
            acc = 0.0 + 0.0j
            for m in range(1, n):
                acc += coefs[m - 1] * kernel(complex(uu), m)
            out[i] = acc * hf(uu / 1j) * uu / np.cos(np.pi * uu)
        return out

    Hu, _ = _heights(s, hf)
    spec = ContourSpec(sigma_u, Hu)
    res = line_integral(f, spec, max_refine=1)
    pref = -np.exp((2.0 * s - 1.0) * _LOG_2PI) * _pow(R, -2.0 * s) * tau
    return complex(4.0 * pref * res.value), \
        {"quadrature": 4.0 * abs(pref) * res.tail_estimate}


def _l1_minus_contour_at_nu(s, form, n, hf, nu, sigma_u, sigma_v):
    """The shifted double-contour representation at Re(s) = 1/2 for a
    given spectral type nu (sum over the +-nu mirror branches)."""
    _, chi_star, R, tau, Mlevel = _arith_data(form)
    sig = _sigma_general_vec(s, chi_star, Mlevel, n - 1)
    Hu, Hv = _heights(s, hf)
    total = 0.0 + 0.0j
    diffs = 0.0
    mm = np.arange(1, n)
    C_rev = np.array([form.coefficients(n - m) for m in mm], dtype=complex)
    for sign in (+1, -1):
        mu = -sign * nu
        prefb = np.cos(np.pi * (s + sign * nu)) \
            / (2.0 * np.pi * np.sin(sign * np.pi * nu))
        cm = C_rev * np.exp(mu * np.log(n - mm)) * sig[mm - 1] \
            * np.exp((s - 1.0 - mu) * np.log(mm))

        def u_fn(u, mu=mu):
            return hf(u / 1j) * u * np.tan(np.pi * u) \
                * np.exp(-loggamma(s + mu - u) - loggamma(s + mu + u))

        def couple_log(u, v):
            return loggamma(u - v) + loggamma(-u - v)

        def v_log(v, mu=mu):
            return loggamma(s + mu + v) + loggamma(1.0 - s + mu + v) \
                + v * np.log(n)

        def v_lin(v, cm=cm):
            return cm @ np.exp(-np.multiply.outer(np.log(mm), v)), None

        val, diff, _ = _double_contour(
            u_fn, couple_log, v_log, v_lin,
            lambda lv: _graded_nodes(sigma_u, Hu, lv),
            lambda lv: _graded_nodes(sigma_v, Hv, lv))
        total += prefb * 4.0 * val
        diffs += abs(prefb) * 4.0 * diff
    pref = np.exp((2.0 * s - 1.0) * _LOG_2PI) * _pow(R, -2.0 * s) * tau
    return complex(pref * total), {"quadrature": abs(pref) * diffs}


def _l1_minus_impl(s, form, n, hf, representation, sigma_u, sigma_v):
    s = complex(s)
    n = int(n)
    if n == 1:
        return 0.0 + 0.0j, {}
    if s.real < 0.5:
        raise MomentError("L1- requires Re(s) >= 1/2")
    if representation == "auto":
        representation = "contour" if (
            abs(s.real - 0.5) < 1e-9 and form.kind != "holomorphic") \
            else "series"
    if representation == "series":
        return _l1_minus_series(s, form, n, hf, sigma_u)
    if representation != "contour":
        raise MomentError("unknown L1- representation %r" % representation)
    if abs(s.real - 0.5) >= 1e-9:
        raise MomentError("the L1- contour representation needs Re(s) = 1/2")
    if sigma_u is None:
        sigma_u = 0.26
    if sigma_v is None:
        sigma_v = -0.38
    if not (0.0 < sigma_u < 0.5 and -0.5 < sigma_v < -sigma_u):
        raise MomentError(
            "L1- contour needs 0 < sigma_u < 1/2, -1/2 < sigma_v < -sigma_u")
    nu = form.nu
    if abs(nu) >= NU_SMALL_BAND:
        return _l1_minus_contour_at_nu(s, form, n, hf, nu, sigma_u, sigma_v)
    # Even-in-nu extrapolation through the removable nu = 0 point of the
    # +-nu mirror decomposition.
    d = NU_SMALL_DELTA
    ring = [1j * d, 1j * np.sqrt(2.0) * d, 2j * d]
    vals, tails = [], {}
    for nn in ring:
        v, tl = _l1_minus_contour_at_nu(s, form, n, hf, nn, sigma_u, sigma_v)
        vals.append(v)
        for key, tv in tl.items():
            tails[key] = max(tails.get(key, 0.0), tv)
    # The mirror decomposition is even in nu: fit a quadratic in nu^2.
    x = np.array([(complex(nn) ** 2).real for nn in ring])
    V = np.vander(x, 3, increasing=True)
    coef = np.linalg.solve(V, np.array(vals))
    tt = (complex(nu) ** 2).real  # nu is purely imaginary here
    val = coef[0] + coef[1] * tt + coef[2] * tt * tt
    tails["nu_extrapolation"] = float(abs(coef[2]) * x[-1] ** 2)
    return complex(val), tails


def error_term_L1_minus(s, form, n, hf, representation="auto",
                        sigma_u=None, sigma_v=None):
    """L1-(s, phi; n): the short-sum (m <= n-1) error term.

    representation: "series" (single u-integral against the F1/F2 kernel,
    valid for Re(s) >= 1/2), "contour" (the shifted double-contour form at
    Re(s) = 1/2), or "auto".  Exactly 0 for n = 1."""
    return _l1_minus_impl(s, form, int(n), hf,
                          representation, sigma_u, sigma_v)[0]


def _l2_impl(s, form, n, hf, sigma_u, sigma_v, m_max):
    s = complex(s)
    if form.kind == "holomorphic" or form.reflection == 0:
        return 0.0 + 0.0j, {}
    if s.real < 0.5:
        raise MomentError("L2 requires Re(s) >= 1/2")
    nu = form.nu
    if sigma_v is None:
        sigma_v = max(s.real, 0.5) + 0.3
    if sigma_u is None:
        sigma_u = _avoid_cos_zero(max(s.real, 0.5) + 0.7)
    if not (s.real < sigma_v < sigma_u):
        raise MomentError("L2 needs Re(s) < sigma_v < sigma_u")
    _, chi_star, R, tau, Mlevel = _arith_data(form)
    C = form.coeff_array(m_max)
    sig_shift = _sigma_general_vec(s, chi_star, Mlevel, m_max + n)
    a = C * sig_shift[n:n + m_max]
    osc = nu if form.kind == "eisenstein_level1" else 0j
    nb = 3 if form.kind == "eisenstein_level1" else 1
    pref = np.exp((2.0 * s - 1.0) * _LOG_2PI) * _pow(R, -2.0 * s) * tau \
        * form.reflection * np.cos(np.pi * nu) / np.pi

    def u_fn(u):
        return hf(u / 1j) * u / np.cos(np.pi * u)

    def couple_log(u, v):
        return loggamma(u - v) - loggamma(1.0 + u + v)

    def v_log(v):
        return loggamma(1.0 - s + v - nu) + loggamma(1.0 - s + v + nu) \
            + v * np.log(n)

    def v_lin(v):
        vals, _, dv = _series_with_tail(a, 1.0 - s + v, osc, nb)
        return vals, dv

    Hu, Hv = _heights(s, hf)
    val, diff, serr = _double_contour(
        u_fn, couple_log, v_log, v_lin,
        lambda lv: _uniform_nodes(sigma_u, Hu, lv),
        lambda lv: _uniform_nodes(sigma_v, Hv, lv))
    value = complex(4.0 * pref * val)
    return value, {"quadrature": 4.0 * abs(pref) * diff,
                   "series": 4.0 * abs(pref) * serr}


def error_term_L2(s, form, n, hf, sigma_u=None, sigma_v=None,
                  m_max=DEFAULT_M_MAX):
    """L2(s, phi; n): the opposite-sign shifted-convolution error term
    (exactly 0 for holomorphic forms)."""
    return _l2_impl(s, form, int(n), hf, sigma_u, sigma_v, m_max)[0]


# ---------------------------------------------------------------------------
# The continuous-spectrum residue term and full right-hand side


def _extra_continuous(s, form, hf):
    if form.kind != "eisenstein_level1" or \
            abs(2.0 * complex(s) - 1.0) >= S_HALF_RADIUS:
        return 0.0 + 0.0j
    t = form.t
    if abs(t) >= 1e-5:
        total = 0.0 + 0.0j
        for sign in (+1, -1):
            arg = (0.5 + 1j * sign * t) / 1j
            total += hf(arg) * zeta(1.0 + 2j * sign * t) \
                / zeta(2.0 + 2j * sign * t)
        return complex(-2.0 * total)
    # t -> 0: h(+-i/2) = 0 cancels the zeta(1) pole; the limit keeps only
    # the Gaussian window factor at r = -i/2 (double exponentially small).
    W = hf.width
    G = np.exp(-(((-0.5j - hf.T) / W) ** 2)) \
        + np.exp(-(((-0.5j + hf.T) / W) ** 2))
    return complex(2.0 * G / ((hf.C - 0.25) * zeta(2.0)))


@dataclass
class MomentTermReport:
    """Every term of the moment identity right-hand side."""

    M: complex
    M_plus: complex
    M_minus: complex
    L1_plus: complex
    L1_minus: complex
    L2: complex
    extra_continuous: complex
    tails: dict

    def total(self):
        return (self.M + self.M_plus + self.M_minus + self.L1_plus
                + self.L1_minus + self.L2 + self.extra_continuous)


def assemble_rhs(s, form, n, hf, m_max=DEFAULT_M_MAX):
    """All terms of the moment identity for the given form at (s, n)."""
    s = complex(s)
    n = int(n)
    tails = {}
    M = main_term_M(s, form, n, hf)
    Mp, Mm = extra_terms_Mpm(s, form, n, hf)
    L1p, t1 = _l1_plus_impl(s, form, n, hf, None, None, m_max)
    for key, val in t1.items():
        tails["L1_plus_" + key] = val
    L1m, t2 = _l1_minus_impl(s, form, n, hf, "auto", None, None)
    for key, val in t2.items():
        tails["L1_minus_" + key] = val
    L2, t3 = _l2_impl(s, form, n, hf, None, None, m_max)
    for key, val in t3.items():
        tails["L2_" + key] = val
    extra = _extra_continuous(s, form, hf)
    return MomentTermReport(M=M, M_plus=Mp, M_minus=Mm, L1_plus=L1p,
                            L1_minus=L1m, L2=L2, extra_continuous=extra,
                            tails=tails)


# ---------------------------------------------------------------------------
# Per-q decomposition and the direct Kloosterman-Bessel series


def _taper_weights(M0, total):
    """C-infinity taper on m = 1..total: 1 on [1, M0], smooth rolloff on
    (M0, 2 M0), 0 beyond."""
    m = np.arange(1, total + 1, dtype=float)
    w = np.ones(m.shape)
    t = (m - M0) / M0
    mask = (t > 0) & (t < 1)
    tt = t[mask]

    def bump(x):
        out = np.zeros_like(x)
        pos = x > 0
        out[pos] = np.exp(-1.0 / x[pos])
        return out

    w[mask] = bump(1.0 - tt) / (bump(tt) + bump(1.0 - tt))
    w[t >= 1] = 0.0
    return w


def L_q_direct(s, u, form, n, q, m_max=DEFAULT_M_MAX):
    """The absolutely convergent Kloosterman-Bessel series
    L_q = sum_m C_phi(m) m^{-s} S(m, n; q)/q J_{2u}(4 pi sqrt(mn)/q).

    The smoothly tapered partial sums retain a non-oscillatory power
    deficit c1 M^{(1-2s)/2} + c2 M^{2(1-2s)/2} + ... (the coherent
    square-argument family of the Bessel oscillation), so the limit is
    extracted by a least-squares power-law extrapolation over geometric
    cutoffs."""
    s = complex(s)
    u = complex(u)
    n, q = int(n), int(q)
    if u.real < 0.0 or s.real <= 0.75:
        raise MomentError("L_q_direct needs Re(u) >= 0 and Re(s) > 3/4")
    if q % form.level != 0:
        raise MomentError("L_q_direct needs N | q")
    n_cut = 6
    cutoffs = np.array([int(m_max * 2.0 ** (k / 2.0)) for k in range(n_cut)])
    total = 2 * cutoffs[-1]
    C = form.coeff_array(total)
    m = np.arange(1, total + 1)
    S = np.array([kloosterman(r, n, q) for r in range(q)])
    x = 4.0 * np.pi * np.sqrt(m * float(n)) / q
    J = bessel_j(np.full(m.shape, 2.0 * u), x)
    terms = C * np.exp(-s * np.log(m)) * S[m % q] / q * J
    T = np.array([np.sum(terms[:2 * M0] * _taper_weights(M0, 2 * M0))
                  for M0 in cutoffs])
    p = 0.5 - s
    A = np.concatenate(
        [np.ones((n_cut, 1)),
         np.exp(np.multiply.outer(np.log(cutoffs.astype(float)),
                                  p * np.arange(1, 4)))], axis=1)
    coef, *_ = np.linalg.lstsq(A, T, rcond=None)
    return complex(coef[0])


def L_q_direct_with_tail(s, u, form, n, q, m_max=DEFAULT_M_MAX):
    """As L_q_direct, additionally returning an error estimate from the
    sensitivity of the tail extrapolation to its exponent basis."""
    v1 = L_q_direct(s, u, form, n, q, m_max)
    v2 = L_q_direct(s, u, form, n, q, int(m_max * 1.5))
    return v1, abs(v1 - v2)


@dataclass
class LqDecomposition:
    """The six-term single-q decomposition of L_q."""

    M_q_plus: complex
    M_q_minus: complex
    M_q: complex
    L_q1_plus: complex
    L_q1_minus: complex
    L_q2: complex
    tails: dict

    def total(self):
        return (self.M_q_plus + self.M_q_minus + self.M_q
                + self.L_q1_plus + self.L_q1_minus + self.L_q2)


def _poch(z, j):
    out = 1.0 + 0.0j
    for i in range(j):
        out *= z + i
    return out


def _f1_asympt_coeffs(s, u, nu, J):
    """F1(s,u,nu;x) ~ sum_j g_j x^{-u-j} as x -> infinity."""
    a, b, c = 1.0 - s - nu + u, 1.0 - s + nu + u, 1.0 + 2.0 * u
    P = gamma_ratio([a, b], [0.5 - s + u, 0.5 + s - u, c])
    return [P * _poch(a, j) * _poch(b, j) / (_poch(c, j) * math.factorial(j))
            for j in range(J)]


def _f2_asympt_coeffs(s, u, k, J):
    half = (k - 1) / 2.0
    a, b, c = 1.0 - s + u + half, 1.0 - s + u - half, 1.0 + 2.0 * u
    P = -(1j ** k) * gamma_ratio([a], [s - u + half, c])
    return [P * _poch(a, j) * _poch(b, j) / (_poch(c, j) * math.factorial(j))
            for j in range(J)]


def _f3_asympt_coeffs(s, u, nu, J):
    """F3(s,u,nu;x) ~ sum_j g_j x^{u+j} as x -> 0 (x = n/m)."""
    a, b, c = 1.0 - s - nu + u, 1.0 - s + nu + u, 1.0 + 2.0 * u
    P = gamma_ratio([a, b], [c])
    return [P * _poch(a, j) * _poch(b, j) * (-1.0) ** j
            / (_poch(c, j) * math.factorial(j)) for j in range(J)]


def _lq_series_tail(form, q, shift, z, b, osc):
    """Tail sum_{m > len(b)} C_phi(m) c_q(m + shift) m^{-z}, where `b` is
    the coefficient head.  Exact (Hurwitz-zeta bilinear form) for the
    Eisenstein input; fitted-density tail otherwise."""
    if form.kind == "eisenstein_level1":
        val = _eis_lq_tail(form, q, shift, z, b)
        return val, 1e-12 * (1.0 + abs(val))
    vals, e, _ = _series_with_tail(b, np.array([z]), osc, nbasis=1)
    m = np.arange(1, len(b) + 1)
    return vals[0] - np.sum(b * np.exp(-z * np.log(m))), e


def L_q_decomposed(s, u, form, n, q, m_max=DEFAULT_M_MAX):
    """All six terms of the single-q decomposition of L_q on the strip
    1/2 <= Re(s) < Re(u)."""
    from .transforms import F1, F2, F3
    s = complex(s)
    u = complex(u)
    n, q = int(n), int(q)
    if not 0.5 <= s.real < u.real:
        raise MomentError("L_q_decomposed needs 1/2 <= Re(s) < Re(u)")
    if q % form.level != 0:
        raise MomentError("L_q_decomposed needs N | q")
    chi = form.character
    nu = form.nu
    holo = form.kind == "holomorphic"
    k = form.weight if holo else 0
    ctab = _gauss_table(chi, q)
    q2s = np.exp(-2.0 * s * np.log(q))
    two_pi_s = np.exp((2.0 * s - 1.0) * _LOG_2PI)
    tails = {}

    # M_q^{+-}: only for forms with constant terms.
    if form.is_cuspidal:
        mqp = mqm = 0.0 + 0.0j
    else:
        cqn = ctab[n % q]
        mqp = 2.0 * form.constant_term(+1) \
            * gamma_ratio([u - s + 1.0 + nu], [u + s - nu]) \
            * _pow(np.pi, 0.5 + nu) * np.exp((2.0 * s - 2.0 - 2.0 * nu)
                                             * _LOG_2PI) / cgamma(0.5 + nu) \
            * _pow(n, s - 1.0 - nu) * cqn * q2s
        mqm = 2.0 * form.constant_term(-1) \
            * gamma_ratio([u - s + 1.0 - nu], [u + s + nu]) \
            * _pow(np.pi, 0.5 - nu) * np.exp((2.0 * s - 2.0 + 2.0 * nu)
                                             * _LOG_2PI) / cgamma(0.5 - nu) \
            * _pow(n, s + nu - 1.0) * cqn * q2s

    # M_q: needs c_{xi|q}(0), which is phi(q) for the principal character
    # and 0 otherwise.
    Cn = complex(form.coefficients(n))
    if not chi.is_principal or Cn == 0:
        mq = 0.0 + 0.0j
    elif holo:
        half = (k - 1) / 2.0
        mq = two_pi_s * euler_phi(q) * q2s * Cn * _pow(n, s - 1.0) \
            * (1j ** k) * cgamma(2.0 * s - 1.0) \
            * np.sin(np.pi * (s + u - half)) / np.pi \
            * gamma_ratio([1.0 - s - u + half, 1.0 - s + u + half],
                          [s + u + half, s - u + half])
    else:
        mq = -two_pi_s * euler_phi(q) * q2s * Cn * _pow(n, s - 1.0) \
            * gamma_ratio([1.0 - s - nu + u, 1.0 - s + nu + u, 2.0 * s - 1.0],
                          [0.5 - s + u, 0.5 + s - u, s + nu + u, s - nu + u])

    # L_{q,1}^+: exact kernel head, then the large-x asymptotic expansion
    # with analytic fitted tails of the shifted coefficient sums.
    m_switch = min(int(ASYMPTOTIC_X * n) + 1, m_max)
    C = form.coeff_array(m_max + n)
    mhead = np.arange(1, m_switch + 1)
    head = 0.0 + 0.0j
    for m in mhead:
        x = (m + n) / n
        ker = F2(s, u, k, x) if holo else F1(s, u, nu, x)
        head += C[m + n - 1] * ctab[m % q] * _pow(m + n, s - 1.0) * ker
    coeffs = _f2_asympt_coeffs(s, u, k, ASYMPTOTIC_TERMS) if holo \
        else _f1_asympt_coeffs(s, u, nu, ASYMPTOTIC_TERMS)
    # Coefficient array in m' = m + n (so the power is a pure m'^{-z}).
    bp = C[:m_max + n].copy()
    bp *= ctab[(np.arange(1, m_max + n + 1) - n) % q]
    osc = nu if form.kind == "eisenstein_level1" else 0j
    mid_lo, mid_hi = m_switch + n, m_max + n
    mmid = np.arange(mid_lo + 1, mid_hi + 1)
    asym = 0.0 + 0.0j
    est = 0.0
    for j, g in enumerate(coeffs):
        z = u + 1.0 - s + j
        mid = np.sum(bp[mid_lo:mid_hi] * np.exp(-z * np.log(mmid)))
        tail, e = _lq_series_tail(form, q, -n, z, bp, osc)
        asym += g * _pow(n, u + j) * (mid + tail)
        est += abs(g * _pow(n, u + j)) * e
    lq1p = -two_pi_s * q2s * chi(-1) * (head + asym)
    tails["L_q1_plus"] = abs(two_pi_s * q2s) * est

    # L_{q,1}^-: the finite short sum.
    lq1m = 0.0 + 0.0j
    for m in range(1, n):
        ker = F2(s, u, k, m / n) if holo else F1(s, u, nu, m / n)
        lq1m += complex(form.coefficients(m)) * ctab[(n - m) % q] \
            * _pow(m, s - 1.0) * ker
    lq1m *= -two_pi_s * q2s

    # L_{q,2}: zero for holomorphic forms.
    if holo or form.reflection == 0:
        lq2 = 0.0 + 0.0j
    else:
        head2 = 0.0 + 0.0j
        for m in mhead:
            head2 += C[m - 1] * ctab[(n + m) % q] * _pow(m, s - 1.0) \
                * F3(s, u, nu, n / m)
        b2 = C[:m_max] * ctab[(np.arange(1, m_max + 1) + n) % q]
        coeffs3 = _f3_asympt_coeffs(s, u, nu, ASYMPTOTIC_TERMS)
        asym2 = 0.0 + 0.0j
        est2 = 0.0
        mm2 = np.arange(m_switch + 1, m_max + 1)
        for j, g in enumerate(coeffs3):
            z = u + 1.0 - s + j
            mid = np.sum(b2[m_switch:m_max] * np.exp(-z * np.log(mm2)))
            tail, e = _lq_series_tail(form, q, n, z, b2, osc)
            asym2 += g * _pow(n, u + j) * (mid + tail)
            est2 += abs(g * _pow(n, u + j)) * e
        lq2 = two_pi_s * form.reflection * np.cos(np.pi * nu) / np.pi \
            * q2s * (head2 + asym2)
        tails["L_q2"] = abs(two_pi_s * q2s) * est2

    return LqDecomposition(
        M_q_plus=complex(mqp), M_q_minus=complex(mqm), M_q=complex(mq),
        L_q1_plus=complex(lq1p), L_q1_minus=complex(lq1m),
        L_q2=complex(lq2), tails=tails)
