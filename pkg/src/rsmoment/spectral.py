"""Level-1 Maass spectral data, central L-values and trace-formula sides.

This module loads a bundled list of Hecke-Maass cusp forms for SL(2,Z)
(spectral parameters r <= 30.5 with Hecke eigenvalues lambda(n) for
n <= 64), validates it on ingest, evaluates central L-values L(1/2+it, u_j)
by a smoothed approximate functional equation, and assembles the two sides
of the Kuznetsov trace formula as well as the spectral side of the first
moment of the Rankin-Selberg convolution of the level-1 Eisenstein series
against that basis.

Normalizations.  Fourier coefficients rho_j(n) = rho_j(1) lambda_j(n) for
n >= 1, and the stored rho1_sq is |rho_j(1)|^2 for the L^2-normalized form
(so that rho1_sq / cosh(pi r_j) is of moderate size).  The continuous
spectrum of level 1 enters through the Eisenstein coefficients
tau(1/2+ir, n) = 2 sigma_{-2ir}(n) n^{ir} / zeta_star(1+2ir).
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import divisors, kloosterman
from .contour import ContourSpec
from .special import loggamma, zeta, zeta_star
from .transforms import H0, H_plus, _real_line_integral

__all__ = [
    "SpectralDataError",
    "MaassFormRecord",
    "SpectralDataset",
    "load_dataset",
    "default_dataset_path",
    "lvalue",
    "KuznetsovReport",
    "kuznetsov_sides",
    "FirstMomentReport",
    "first_moment_lhs",
]

DATA_ENV_VAR = "RSMOMENT_DATA_DIR"
DEFAULT_DATA_FILE = "level1_maass.msf"

# Hecke-relation residual above which a dataset line is rejected.
HECKE_TOL = 1e-6
# Allowed deviation of the record count from the eigenvalue counting
# function before a warning is emitted.
WEYL_SLACK = 3.0

_AFE_ABSCISSA = 1.5
_AFE_HEIGHT = 6.5


class SpectralDataError(ValueError):
    """Raised for malformed or arithmetically inconsistent spectral data."""


@dataclass
class MaassFormRecord:
    """One even or odd Hecke-Maass cusp form for SL(2,Z).

    `r` is the spectral parameter (eigenvalue 1/4 + r^2), `parity` is 0
    for even and 1 for odd forms, `rho1_sq` is |rho(1)|^2 and `lambdas`
    holds the Hecke eigenvalues with lambdas[n] = lambda(n) for
    1 <= n <= n_max (lambdas[0] is unused and set to 0).
    """

    r: float
    parity: int
    rho1_sq: float
    lambdas: np.ndarray

    @property
    def n_max(self):
        return self.lambdas.size - 1

    def lam(self, n):
        n = int(n)
        if not 1 <= n <= self.n_max:
            raise SpectralDataError(
                "lambda(%d) not available (have n <= %d)" % (n, self.n_max))
        return float(self.lambdas[n])


def _check_hecke(lambdas, line_no):
    """Verify lambda(m)lambda(n) = sum_{d | (m,n)} lambda(mn/d^2)."""
    n_max = lambdas.size - 1
    worst = 0.0
    worst_pair = None
    for m in range(2, n_max + 1):
        for n in range(m, n_max // m + 1):
            rhs = 0.0
            g = np.gcd(m, n)
            for d in divisors(int(g)):
                rhs += lambdas[m * n // (d * d)]
            res = abs(lambdas[m] * lambdas[n] - rhs)
            if res > worst:
                worst, worst_pair = res, (m, n)
    if worst > HECKE_TOL:
        raise SpectralDataError(
            "line %d: Hecke relation violated at (m, n) = %s by %.3g"
            % (line_no, worst_pair, worst))


def _weyl_count(R):
    """Smoothed eigenvalue count for SL(2,Z) up to spectral parameter R."""
    return (R * R / 12.0
            - (2.0 * R / np.pi) * np.log(R / (np.sqrt(np.pi / 2.0) * np.e))
            + 131.0 / 144.0)


@dataclass
class SpectralDataset:
    """A validated collection of Maass form records, sorted by r."""

    records: list = field(default_factory=list)
    source: str = ""

    @property
    def r_max(self):
        return max(rec.r for rec in self.records) if self.records else 0.0

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def check_coverage(self, hf):
        """Warn when the test function window extends past the data."""
        needed = hf.T + 5.0 * hf.width
        if needed > self.r_max:
            warnings.warn(
                "test function window reaches r = %.2f but spectral data "
                "ends at r = %.2f; discrete sums will be truncated"
                % (needed, self.r_max), stacklevel=2)
            return False
        return True


def default_dataset_path():
    base = os.environ.get(DATA_ENV_VAR)
    if base is None:
        base = os.path.join(os.path.dirname(__file__), "data")
    return os.path.join(base, DEFAULT_DATA_FILE)


def load_dataset(path=None):
    """Parse and validate a spectral data file.

    Each non-comment line reads `r parity rho1_sq lambda_2 ... lambda_K`.
    Every line is checked against the Hecke multiplicativity relations and
    the total count is compared with the eigenvalue counting function.
    """
    if path is None:
        path = default_dataset_path()
    records = []
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            txt = raw.strip()
            if not txt or txt.startswith("#"):
                continue
            parts = txt.split()
            if len(parts) < 4:
                raise SpectralDataError(
                    "line %d: expected r, parity, rho1_sq and eigenvalues"
                    % line_no)
            r = float(parts[0])
            if parts[1] == "even":
                parity = 0
            elif parts[1] == "odd":
                parity = 1
            else:
                raise SpectralDataError(
                    "line %d: parity must be 'even' or 'odd', got %r"
                    % (line_no, parts[1]))
            rho1_sq = float(parts[2])
            if r <= 0 or rho1_sq <= 0:
                raise SpectralDataError(
                    "line %d: r and rho1_sq must be positive" % line_no)
            lams = np.empty(len(parts) - 1)
            lams[0] = 0.0
            lams[1] = 1.0
            lams[2:] = [float(p) for p in parts[3:]]
            _check_hecke(lams, line_no)
            records.append(MaassFormRecord(r, parity, rho1_sq, lams))
    if not records:
        raise SpectralDataError("no records found in %s" % path)
    records.sort(key=lambda rec: rec.r)
    count = len(records)
    expected = _weyl_count(records[-1].r)
    if abs(count - expected) > WEYL_SLACK:
        warnings.warn(
            "dataset has %d forms up to r = %.2f but the counting function "
            "predicts %.1f; the list may be incomplete" %
            (count, records[-1].r, expected), stacklevel=2)
    return SpectralDataset(records, source=str(path))


# ---------------------------------------------------------------------------
# Central L-values by smoothed approximate functional equation.


def _afe_nodes():
    spec = ContourSpec(_AFE_ABSCISSA, _AFE_HEIGHT, nodes=32)
    return spec.points(1.0)


def _gamma_log(z, parity, r):
    """log of pi^{-z} Gamma((z+eps+ir)/2) Gamma((z+eps-ir)/2)."""
    z = np.asarray(z, dtype=complex)
    return (-z * np.log(np.pi)
            + loggamma((z + parity + 1j * r) / 2.0)
            + loggamma((z + parity - 1j * r) / 2.0))


def _afe_weights(z, parity, r, ns):
    """w-integral weights F_z(n) = (1/2 pi i) int e^{w^2}
    gamma(z+w)/gamma(z) n^{-w} dw / w on Re(w) = 3/2, for each n in ns."""
    v, wq = _afe_nodes()
    g0 = _gamma_log(z, parity, r)
    kern = np.exp(v * v + _gamma_log(z + v, parity, r) - g0) / v
    pows = np.exp(-np.log(ns)[:, None] * v[None, :])
    return (pows * kern[None, :]) @ wq / (2.0 * np.pi)


def lvalue(record, t, with_tail=False):
    """L(1/2 + it, u_j) for the Maass form `record`.

    Uses the completed functional equation Lambda(s) = (-1)^parity
    Lambda(1-s) with Lambda(s) = pi^{-s} Gamma((s+eps+ir)/2)
    Gamma((s+eps-ir)/2) L(s), smoothing the sum with a Gaussian e^{w^2}.
    Odd forms give an exact zero at t = 0.
    """
    s = 0.5 + 1j * float(t)
    eps = record.parity
    r = record.r
    nmax = record.n_max
    ns = np.arange(1, nmax + 1, dtype=float)
    lam = record.lambdas[1:nmax + 1]
    w_direct = _afe_weights(s, eps, r, ns)
    w_dual = _afe_weights(1.0 - s, eps, r, ns)
    ratio = np.exp(_gamma_log(1.0 - s, eps, r) - _gamma_log(s, eps, r))
    sign = -1.0 if eps else 1.0
    direct = np.sum(lam * ns ** (-s) * w_direct)
    dual = np.sum(lam * ns ** (-(1.0 - s)) * w_dual)
    val = complex(direct + sign * ratio * dual)
    if not with_tail:
        return val
    # Truncation estimate for the omitted n in (nmax, 4*nmax]: model the
    # unknown eigenvalues as mean-zero with the RMS size seen in the
    # record, so the terms add in quadrature rather than in magnitude.
    ext = np.arange(nmax + 1, 4 * nmax + 1, dtype=float)
    lam_rms = float(np.sqrt(np.mean(lam * lam)))
    wa = np.abs(_afe_weights(s, eps, r, ext))
    wb = np.abs(ratio) * np.abs(_afe_weights(1.0 - s, eps, r, ext))
    terms = lam_rms * ext ** -0.5 * (wa + wb)
    # The weights fall off super-polynomially past 4*nmax; double the last
    # band to cover the remainder.
    tail = float(np.sqrt(np.sum(terms ** 2) + np.sum(terms[-nmax:] ** 2)))
    return val, tail


# ---------------------------------------------------------------------------
# Arithmetic helpers for the continuous spectrum.


def _sigma_ir_vec(n, rvec):
    """sigma_{-2ir}(n) n^{ir} for an array of real r."""
    out = np.zeros(rvec.shape, dtype=complex)
    for d in divisors(int(n)):
        out += np.exp(-2j * rvec * np.log(d))
    return out * np.exp(1j * rvec * np.log(n))


def _zeta_star_line(rvec):
    """zeta_star(1 + 2ir) on an array of real r (scalar library calls)."""
    return np.array([zeta_star(1.0 + 2j * r) for r in rvec])


# ---------------------------------------------------------------------------
# Kuznetsov trace formula, both sides.


@dataclass
class KuznetsovReport:
    """Both sides of the level-1 Kuznetsov formula for a coefficient pair.

    spectral = sum_j h(r_j)/cosh(pi r_j) rho_j(m) conj(rho_j(n))
             + (1/4 pi) int h/cosh * tau(m) conj(tau(n)) dr,
    geometric = delta_{m=n} H0(h)
              + sum_q S(m,n;q)/q * H_plus(4 pi sqrt(mn)/q).
    """

    spectral_discrete: float
    spectral_continuous: float
    geometric_diagonal: float
    geometric_kloosterman: float
    tails: dict

    def spectral_total(self):
        return self.spectral_discrete + self.spectral_continuous

    def geometric_total(self):
        return self.geometric_diagonal + self.geometric_kloosterman


def kuznetsov_sides(dataset, m, n, hf, q_max=150):
    """Evaluate both sides of the Kuznetsov formula at level 1.

    `m`, `n` are positive integers with Hecke eigenvalues available in the
    dataset.  The Kloosterman sum over moduli is truncated at `q_max` with
    a Weil-bound extrapolation reported in the tails.
    """
    m = int(m)
    n = int(n)
    if m < 1 or n < 1:
        raise SpectralDataError("kuznetsov_sides requires positive m, n")
    dataset.check_coverage(hf)

    discrete = 0.0
    for rec in dataset:
        w = hf(rec.r).real / np.cosh(np.pi * rec.r)
        discrete += w * rec.rho1_sq * rec.lam(m) * rec.lam(n)

    def cont_integrand(r):
        zs = _zeta_star_line(r)
        tau_m = 2.0 * _sigma_ir_vec(m, r) / zs
        tau_n = 2.0 * _sigma_ir_vec(n, r) / zs
        return (hf(r).real / np.cosh(np.pi * r)
                * np.conj(tau_m) * tau_n).real

    continuous = float(_real_line_integral(
        cont_integrand, hf.support_height)) / (4.0 * np.pi)

    diagonal = H0(hf) if m == n else 0.0
    xs = 4.0 * np.pi * np.sqrt(m * n)
    kloos = 0.0
    last_scale = 0.0
    for q in range(1, q_max + 1):
        s_q = kloosterman(m, n, q)
        if s_q != 0:
            hp = H_plus(xs / q, hf).real
            kloos += s_q / q * hp
            last_scale = max(last_scale, abs(hp) * q / xs)
    # Weil tail: |S(m,n;q)| <= sqrt(q gcd(m,n,q)) d(q) and H_plus(x) = O(x)
    # for small x, with the linear constant read off the computed values.
    g = float(np.gcd(m, n))
    tail_sum = 2.0 * (np.log(q_max) + 2.0) / np.sqrt(q_max)
    weil_tail = last_scale * xs * np.sqrt(g) * tail_sum
    return KuznetsovReport(
        spectral_discrete=float(discrete),
        spectral_continuous=continuous,
        geometric_diagonal=float(diagonal),
        geometric_kloosterman=float(kloos),
        tails={"kloosterman_truncation": float(weil_tail)},
    )


# ---------------------------------------------------------------------------
# First moment, spectral side, for the level-1 Eisenstein series.


@dataclass
class FirstMomentReport:
    """Spectral side of the central first moment against the level-1
    Eisenstein series phi = (1/2) E*(z, 1/2 + it)."""

    discrete: complex
    continuous: complex
    tails: dict

    def total(self):
        return self.discrete + self.continuous


def first_moment_lhs(dataset, n, t, hf):
    """Discrete plus continuous spectral sum of the first moment at s = 1/2.

    discrete = sum_j h(r_j)/cosh(pi r_j) |rho_j(1)|^2 lambda_j(n)
               L(1/2+it, u_j) L(1/2-it, u_j),
    continuous = (1/4 pi) int h(r)/cosh(pi r)
                 * 4 zeta(1/2+it+ir) zeta(1/2+it-ir) zeta(1/2-it+ir)
                   zeta(1/2-it-ir) / (zeta_star(1+2ir) zeta_star(1-2ir))
                 * sigma_{-2ir}(n) n^{ir} dr.
    """
    n = int(n)
    if n < 1:
        raise SpectralDataError("first_moment_lhs requires positive n")
    t = float(t)
    dataset.check_coverage(hf)

    discrete = 0.0 + 0.0j
    ltail = 0.0
    for rec in dataset:
        w = hf(rec.r).real / np.cosh(np.pi * rec.r)
        if w == 0.0:
            continue
        lp, tp = lvalue(rec, t, with_tail=True)
        if t == 0.0:
            lm, tm = lp, tp
        else:
            lm, tm = lvalue(rec, -t, with_tail=True)
        discrete += w * rec.rho1_sq * rec.lam(n) * lp * lm
        ltail += abs(w) * rec.rho1_sq * abs(rec.lam(n)) * \
            (abs(lp) * tm + abs(lm) * tp + tp * tm)

    def cont_integrand(r):
        zs_p = _zeta_star_line(r)
        zs_m = np.conj(zs_p)
        num = np.empty(r.shape, dtype=complex)
        for i, ri in enumerate(r):
            num[i] = (zeta(0.5 + 1j * (t + ri)) * zeta(0.5 + 1j * (t - ri))
                      * zeta(0.5 - 1j * (t - ri)) * zeta(0.5 - 1j * (t + ri)))
        return (hf(r).real / np.cosh(np.pi * r)
                * 4.0 * num / (zs_p * zs_m) * _sigma_ir_vec(n, r))

    continuous = complex(_real_line_integral(
        cont_integrand, hf.support_height)) / (4.0 * np.pi)
    return FirstMomentReport(
        discrete=complex(discrete),
        continuous=continuous,
        tails={"lvalue_truncation": float(ltail)},
    )
