"""Vertical-line and bent-path contour quadrature for Mellin-Barnes integrals.

All integrals are normalized as (1/(2*pi*i)) * integral of f(v) dv along an
upward-oriented path.  Straight vertical lines are handled by `line_integral`
(composite Gauss-Legendre panels with panel-halving refinement).  Integrands
whose modulus only decays polynomially on a vertical line are handled by
`bent_line_integral`, which follows the vertical line on a central segment and
then bends both wings by a fixed angle so that a power factor x^v supplies
exponential decay.  `power_tail_integral` complements a truncated vertical
line when the integrand has a known power-law asymptotic (no oscillation) on
the wings.

The integrand callable must accept a complex numpy array and return a complex
numpy array of the same shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ContourError",
    "ContourSpec",
    "QuadratureResult",
    "line_integral",
    "double_line_integral",
    "bent_line_integral",
    "power_tail_integral",
]

_TWO_PI = 2.0 * np.pi

# Minimum allowed distance between an integration path and any declared pole.
POLE_CLEARANCE = 0.05


class ContourError(ValueError):
    """Raised for invalid contour specifications or pole collisions."""


def _gauss_nodes(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


@dataclass
class ContourSpec:
    """A straight vertical contour Re(v) = abscissa, |Im(v)| <= height.

    `nodes` is the Gauss-Legendre order per panel (panels have height 2
    before refinement).  `refinement` is the relative panel-halving
    convergence target.  `poles` is an optional sequence of complex pole
    locations; the spec is rejected if the line passes within
    POLE_CLEARANCE of any of them.
    """

    abscissa: float
    height: float
    nodes: int = 32
    refinement: float = 1e-10
    poles: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.height <= 0:
            raise ContourError("contour height must be positive")
        if self.nodes < 4:
            raise ContourError("at least 4 nodes per panel are required")
        for p in self.poles:
            p = complex(p)
            if abs(p.imag) <= self.height:
                dist = abs(p.real - self.abscissa)
            else:
                dist = abs(p - complex(self.abscissa,
                                       np.sign(p.imag) * self.height))
            if dist < POLE_CLEARANCE:
                raise ContourError(
                    "contour at Re(v)=%g passes within %g of pole %s"
                    % (self.abscissa, POLE_CLEARANCE, p))

    def points(self, panel_height=2.0):
        """Quadrature nodes (complex) and weights (real, for dy) on the line."""
        n_panels = max(1, int(np.ceil(2.0 * self.height / panel_height)))
        edges = np.linspace(-self.height, self.height, n_panels + 1)
        x, w = _gauss_nodes(self.nodes)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        ys = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        ws = (half[:, None] * w[None, :]).ravel()
        return self.abscissa + 1j * ys, ws


@dataclass
class QuadratureResult:
    value: complex
    tail_estimate: float
    nodes_used: int


def line_integral(f, spec, panel_height=2.0, max_refine=3):
    """(1/(2*pi*i)) * integral of f over the vertical line of `spec`.

    The panel height is halved until two successive evaluations agree to
    spec.refinement (relative), or max_refine halvings are reached.  The
    reported tail estimate combines the last refinement difference with a
    crude bound for the truncated |Im v| > height tails, obtained from the
    integrand magnitude near the endpoints assuming monotone decay.
    """
    h = float(panel_height)
    v, w = spec.points(h)
    fv = np.asarray(f(v))
    val = np.sum(fv * w) / _TWO_PI
    nodes = v.size
    diff = np.inf
    for _ in range(max_refine):
        h *= 0.5
        v, w = spec.points(h)
        fv = np.asarray(f(v))
        new = np.sum(fv * w) / _TWO_PI
        nodes += v.size
        diff = abs(new - val)
        val = new
        if diff <= spec.refinement * (1.0 + abs(val)):
            break
    # Endpoint-decay truncation estimate.
    top = complex(spec.abscissa, spec.height)
    probe = np.array([top - 1j, top, top.conjugate(), top.conjugate() + 1j])
    fp = np.abs(np.asarray(f(probe)))
    tail = 0.0
    for inner, outer in ((fp[0], fp[1]), (fp[3], fp[2])):
        if outer <= 0.0:
            continue
        if inner > outer:
            rate = np.log(inner / outer)  # decay per unit height
            tail += outer / max(rate, 1e-2) / _TWO_PI
        else:
            tail += outer * spec.height / _TWO_PI  # no decay detected
    return QuadratureResult(val, float(tail + diff), nodes)


def double_line_integral(f, spec_u, spec_v, panel_height=2.0, max_refine=2):
    """Iterated (1/(2*pi*i))^2 double integral over two vertical lines.

    `f(u, v)` must broadcast over same-shaped complex arrays; it is called
    on full tensor grids (outer u, inner v).
    """

    def evaluate(h):
        u, wu = spec_u.points(h)
        v, wv = spec_v.points(h)
        total = 0.0 + 0.0j
        chunk = max(1, int(2e6) // max(v.size, 1))
        for i in range(0, u.size, chunk):
            ub = u[i:i + chunk]
            vals = np.asarray(f(ub[:, None], v[None, :]))
            total += np.sum(wu[i:i + chunk] @ (vals * wv[None, :]))
        # Each line contributes a factor (i dy) / (2 pi i) = dy / (2 pi).
        return total / (_TWO_PI * _TWO_PI), u.size * v.size

    h = float(panel_height)
    val, nodes = evaluate(h)
    diff = np.inf
    for _ in range(max_refine):
        h *= 0.5
        new, n2 = evaluate(h)
        nodes += n2
        diff = abs(new - val)
        val = new
        if diff <= max(spec_u.refinement, spec_v.refinement) * (1.0 + abs(val)):
            break
    return QuadratureResult(val, float(diff), nodes)


def _ray_quadrature(f, start, direction, order, tol, t_max, panel_len=2.0):
    """Integral of f along the ray start + t*direction, t in [0, t_max).

    Panels are added until three consecutive panel contributions are below
    tol * (1 + |accumulated|).  Returns (integral including the d(path)
    factor `direction`, last panel magnitude, nodes used).
    """
    x, w = _gauss_nodes(order)
    total = 0.0 + 0.0j
    t0 = 0.0
    quiet = 0
    nodes = 0
    last = 0.0
    while t0 < t_max:
        half = 0.5 * panel_len
        ts = t0 + half + half * x
        vals = np.asarray(f(start + ts * direction))
        if not np.all(np.isfinite(vals)):
            raise ContourError(
                "integrand overflowed on wing at t=%g; the bend geometry "
                "does not give decay for this integrand" % t0)
        piece = np.sum(vals * w) * half * direction
        total += piece
        nodes += ts.size
        last = abs(piece)
        if last <= tol * (1.0 + abs(total)):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        t0 += panel_len
    return total, last, nodes


def bent_line_integral(f, abscissa, bend_height, angle, side,
                       nodes=32, tol=1e-14, t_max=6000.0, poles=()):
    """(1/(2*pi*i)) * integral of f over a bent vertical contour.

    The path runs from lower-left/right infinity up to
    abscissa - i*bend_height, straight up to abscissa + i*bend_height, then
    out to upper infinity.  Both wings make an `angle` (radians, in
    (0, pi/2]) with the vertical direction, bending toward Re(v) < abscissa
    when side == 'left' and Re(v) > abscissa when side == 'right'.

    Equivalence with the straight line requires the integrand to be
    holomorphic in the two swept wing sectors; callers declare poles and we
    verify that none lies inside either sector (with POLE_CLEARANCE slack).
    """
    if side not in ("left", "right"):
        raise ContourError("side must be 'left' or 'right'")
    if not 0.0 < angle <= 0.5 * np.pi:
        raise ContourError("wing angle must lie in (0, pi/2]")
    sgn = -1.0 if side == "left" else 1.0
    up = complex(abscissa, bend_height)
    dn = complex(abscissa, -bend_height)
    dir_up = np.exp(1j * (0.5 * np.pi - sgn * angle))
    dir_dn = np.conj(dir_up)
    # Wing sectors: points with |Im| > bend_height between the vertical ray
    # and the tilted ray on the bending side.
    for p in map(complex, poles):
        if abs(p.imag) < bend_height - POLE_CLEARANCE:
            if abs(p.real - abscissa) < POLE_CLEARANCE:
                raise ContourError("pole %s too close to contour segment" % p)
            continue
        anchor = up if p.imag > 0 else dn
        rel = (p - anchor) / (dir_up if p.imag > 0 else dir_dn)
        # rel = coordinates with the wing direction as positive real axis.
        if rel.real > -POLE_CLEARANCE and \
                sgn * (p.real - abscissa) > -POLE_CLEARANCE:
            # Candidate for the swept sector; check distance to both rays.
            d_wing = abs(rel.imag) if rel.real > 0 else abs(p - anchor)
            d_vert = abs(p.real - abscissa) if abs(p.imag) >= bend_height \
                else abs(p - anchor)
            if min(d_wing, d_vert) < POLE_CLEARANCE:
                raise ContourError("pole %s too close to bent contour" % p)

    x, w = _gauss_nodes(nodes)
    # Central vertical segment.
    half = bend_height
    n_panels = max(1, int(np.ceil(bend_height)))
    edges = np.linspace(-bend_height, bend_height, 2 * n_panels + 1)
    halfs = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[1:] + edges[:-1])
    ys = (mids[:, None] + halfs[:, None] * x[None, :]).ravel()
    ws = (halfs[:, None] * w[None, :]).ravel()
    seg = np.sum(np.asarray(f(abscissa + 1j * ys)) * ws) * 1j
    nodes_used = ys.size

    up_int, up_last, n_up = _ray_quadrature(f, up, dir_up, nodes, tol, t_max)
    dn_int, dn_last, n_dn = _ray_quadrature(f, dn, dir_dn, nodes, tol, t_max)
    nodes_used += n_up + n_dn
    # Orientation: from lower infinity to the bend (reverse of the outgoing
    # lower ray), up the segment, then out along the upper ray.
    total = (-dn_int + seg + up_int) / (2j * np.pi)
    tail = (up_last + dn_last) / _TWO_PI
    return QuadratureResult(total, float(tail), nodes_used)


def power_tail_integral(f, abscissa, height, exponent, n_fit=4, spread=1.18):
    """Wing completion for a truncated vertical line with power-law decay.

    Assumes f(abscissa + i*y) ~ y^exponent * (A0 + A1/y + ...) as y -> +inf
    (and similarly with its own coefficients as y -> -inf), with no
    oscillatory factor.  Fits n_fit coefficients per wing from samples just
    beyond `height` and integrates the fitted asymptotic from `height` to
    infinity, returning the (1/(2*pi*i)) * integral contribution of both
    wings and a crude error estimate (the magnitude of the last fitted
    correction term).
    """
    p = complex(exponent)
    if p.real > -1.0 + 1e-9:
        raise ContourError("power tail requires Re(exponent) < -1")
    V = float(height)
    ts = V * spread ** np.arange(n_fit)
    est = 0.0
    total = 0.0 + 0.0j
    for sign in (+1.0, -1.0):
        samples = np.asarray(f(abscissa + 1j * sign * ts))
        g = samples * ts ** (-p)          # ~ A0 + A1/t + ...
        M = ts[:, None] ** (-np.arange(n_fit)[None, :])
        coef = np.linalg.solve(M, g)
        # integral_V^inf t^(p-k) dt = V^(p-k+1)/(k-1-p)
        ints = V ** (p + 1 - np.arange(n_fit)) / (np.arange(n_fit) - 1 - p)
        wing = np.sum(coef * ints)
        total += wing / _TWO_PI
        est += abs(coef[-1] * ints[-1]) / _TWO_PI
    return QuadratureResult(total, float(est), 2 * n_fit)
