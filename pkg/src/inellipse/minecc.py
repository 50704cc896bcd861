"""Minimal-eccentricity inscribed ellipse.

Minimizing eccentricity over the inscribed family is equivalent to
maximizing the squared axis ratio (b/a)^2 over the center abscissa.  For a
type-1 midpoint-diagonal quadrilateral the maximizer is the root inside
the center interval of an explicit quadratic, so the solution is closed
form; every supported quadrilateral can also be solved by bracketing
numeric maximization, and the two routes cross-validate each other.

For midpoint-diagonal quadrilaterals the angle between the equal conjugate
diameters of the solution equals the angle between the diagonals; the
result carries both angles and their residual so callers can check.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import family
from .conic import Conic, EllipseGeometry, conjugate_diameter_angle, geometry, pullback
from .errors import CircularPoint, NotType1
from .quad import (CanonicalQuad, Point2, QuadKind, classify, diagonal_angle,
                   diagonal_swapped_labelings, newton_segment)

log = logging.getLogger(__name__)

CLOSED_FORM = "closed_form_type1"
NUMERIC = "numeric"


@dataclass(frozen=True)
class CenterQuadratic:
    """Quadratic in the center abscissa whose root inside the center
    interval locates the minimal-eccentricity member (type-1 case).

    o(h) = c2 h^2 + c1 h + c0 with c2 = -2(s^2+t^2)(s-v), c1 = -2k,
    c0 = s k.  k and p1 are always positive, and o changes sign across the
    interval, so the bracketed root exists and is unique.
    """

    c2: float
    c1: float
    c0: float
    k: float
    p1: float

    def __call__(self, h: float) -> float:
        return (self.c2 * h + self.c1) * h + self.c0


@dataclass(frozen=True)
class MinEccResult:
    h_star: float
    conic: Conic
    geom: EllipseGeometry
    gamma: float            # angle between equal conjugate diameters
    alpha: float            # angle between the diagonals
    ratio_sq: float         # (b/a)^2 at the solution
    method: str             # CLOSED_FORM or NUMERIC
    iterations: int
    residual: float         # |gamma - alpha|


def center_quadratic(cq: CanonicalQuad) -> CenterQuadratic:
    s, t, v, w = cq.s, cq.t, cq.v, cq.w
    st2 = s * s + t * t
    k = st2 * v * v - 2.0 * w * s * (v * t - w * s)
    p1 = v * v * st2 - 4.0 * w * s * (v * t - w * s)
    return CenterQuadratic(-2.0 * st2 * (s - v), -2.0 * k, s * k, k, p1)


def closed_form_h(cq: CanonicalQuad, *, tol: float = 1e-9) -> float:
    """Exact maximizing abscissa for a type-1 midpoint-diagonal quad."""
    if classify(cq, tol=tol).kind is not QuadKind.MDQ_TYPE1:
        raise NotType1("closed form requires a type-1 midpoint-diagonal quadrilateral")
    s, t, v = cq.s, cq.t, cq.v
    st2 = s * s + t * t
    sv = s - v
    k = center_quadratic(cq).k
    rk = math.sqrt(k)
    return rk * (-rk + math.sqrt(2.0 * st2 * s * sv + k)) / (2.0 * st2 * sv)


def ratio_sq_closed_form(cq: CanonicalQuad, *, tol: float = 1e-9) -> float:
    """Closed-form maximal squared axis ratio for a type-1 MDQ."""
    if classify(cq, tol=tol).kind is not QuadKind.MDQ_TYPE1:
        raise NotType1("closed form requires a type-1 midpoint-diagonal quadrilateral")
    s, t, v, w = cq.s, cq.t, cq.v, cq.w
    st2 = s * s + t * t
    p1 = center_quadratic(cq).p1
    major = math.sqrt(st2) * math.sqrt(p1)
    minor = abs(2.0 * w * s * t - (t * t - s * s) * v)
    return (major - minor) / (major + minor)


# ---------------------------------------------------------------------------
# numeric maximization
# ---------------------------------------------------------------------------

_GOLDEN = 0.3819660112501051


def _brent_max(f, a: float, b: float, xatol: float, max_iter: int):
    """Golden-section maximization refined by parabolic interpolation."""
    x = w = v = a + _GOLDEN * (b - a)
    fx = fw = fv = f(x)
    d = e = 0.0
    for it in range(1, max_iter + 1):
        m = 0.5 * (a + b)
        tol1 = 0.5 * xatol
        tol2 = 2.0 * tol1
        if abs(x - m) <= tol2 - 0.5 * (b - a):
            return x, it, True
        p = q = r = 0.0
        if abs(e) > tol1:
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2.0 * (q - r)
            if q > 0.0:
                p = -p
            q = abs(q)
            etemp = e
            e = d
            if abs(p) >= abs(0.5 * q * etemp) or p <= q * (a - x) or p >= q * (b - x):
                e = (a - x) if x >= m else (b - x)
                d = _GOLDEN * e
            else:
                d = p / q
                u = x + d
                if u - a < tol2 or b - u < tol2:
                    d = tol1 if m > x else -tol1
        else:
            e = (a - x) if x >= m else (b - x)
            d = _GOLDEN * e
        u = x + d if abs(d) >= tol1 else x + (tol1 if d > 0 else -tol1)
        fu = f(u)
        if fu >= fx:
            if u >= x:
                a = x
            else:
                b = x
            v, w, x = w, x, u
            fv, fw, fx = fw, fx, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu >= fw or w == x:
                v, w = w, u
                fv, fw = fw, fu
            elif fu >= fv or v == x or v == w:
                v, fv = u, fu
    return x, max_iter, False


def _slope_bisect(cq: CanonicalQuad, f, x0: float, a: float, b: float, width: float):
    """Polish a bracketing maximizer by bisecting the slope's sign change.

    A parabolic/golden maximizer alone cannot place a smooth maximum better
    than about sqrt(machine-eps) of the interval because the function is
    flat there; the slope's sign change survives to far finer resolution.
    The slope is the exact-polynomial derivative of the axis ratio (which
    shares nothing with the closed-form root formulas this polish is
    cross-validated against); at circular family members, where that
    formula degenerates, a central-difference slope takes over and still
    pins the kink of the ratio curve.
    """
    step = 4e-6 * width

    def slope(h: float) -> float:
        try:
            return family.ratio_sq_prime(cq, h)
        except CircularPoint:
            return f(h + step) - f(h - step)

    lo_lim, hi_lim = a + step, b - step
    sigma = 3e-5 * width
    left = right = None
    for _ in range(6):
        cl = max(lo_lim, x0 - sigma)
        cr = min(hi_lim, x0 + sigma)
        if cl < cr and slope(cl) > 0.0 > slope(cr):
            left, right = cl, cr
            break
        sigma *= 8.0
    if left is None:
        return x0, 0
    iters = 0
    while right - left > 1e-13 * width and iters < 64:
        mid = 0.5 * (left + right)
        if slope(mid) > 0.0:
            left = mid
        else:
            right = mid
        iters += 1
    return 0.5 * (left + right), iters


def maximize_ratio_sq(cq: CanonicalQuad, *, tol: float = 1e-12,
                      max_iter: int = 200) -> tuple[float, int]:
    """Numerically maximize the squared axis ratio over the center interval.

    A coarse scan brackets the global maximum, a value-only
    golden-section/parabolic pass narrows it, and a slope-sign bisection
    polishes the result well below the flatness floor of value-only
    maximization.  The ratio is positive on the interior and vanishes at
    the endpoints, so an interior maximum always exists.  Never consults
    the closed-form root formulas.
    """
    lo, hi = cq.interval
    width = hi - lo
    guard = family.RELATIVE_ENDPOINT_GUARD * width
    a, b = lo + guard, hi - guard
    f = family.ratio_sq_function(cq)

    n_scan = 33
    hs = np.linspace(a, b, n_scan)
    vals = f(hs)
    i = int(np.argmax(vals))
    bl = float(hs[max(i - 1, 0)])
    br = float(hs[min(i + 1, n_scan - 1)])

    x, iters, converged = _brent_max(f, bl, br, tol * width, max_iter)
    if not converged:
        log.warning("bracketing maximization did not converge in %d iterations", max_iter)
        return float(x), max_iter
    x2, extra = _slope_bisect(cq, f, float(x), a, b, width)
    return x2, iters + extra


# ---------------------------------------------------------------------------
# solver front end
# ---------------------------------------------------------------------------


def _closed_form_via_relabel(cq: CanonicalQuad, tol: float):
    """Try to solve a type-2 quad by relabeling so its MDQ diagonal is D1."""
    for alt in diagonal_swapped_labelings(cq):
        if classify(alt, tol=tol).kind is not QuadKind.MDQ_TYPE1:
            continue
        h_alt = closed_form_h(alt, tol=tol)
        conic = pullback(family.coefficients(alt, h_alt), alt.iso)
        return conic
    return None


def solve(cq: CanonicalQuad, *, tol: float = 1e-9) -> MinEccResult:
    """Minimal-eccentricity inscribed ellipse of a canonical quadrilateral.

    Type-1 midpoint-diagonal quads are solved in closed form (a numeric
    cross-check is logged at debug level); type-2 quads are relabeled to
    type 1 when a valid relabeling exists, otherwise solved numerically;
    everything else is numeric.  Tangential midpoint-diagonal quads are the
    inscribed circle exactly, reported with eccentricity 0 and a
    conjugate-diameter angle of pi/2.
    """
    qc = classify(cq, tol=tol)
    alpha = diagonal_angle(cq)
    method = NUMERIC
    iterations = 0

    if qc.kind is QuadKind.MDQ_TYPE1:
        h = closed_form_h(cq, tol=tol)
        conic = family.coefficients(cq, h)
        method = CLOSED_FORM
        h_num, _ = maximize_ratio_sq(cq)
        log.debug("closed-form h=%.17g, numeric cross-check %.17g, gap %.3e of interval",
                  h, h_num, abs(h - h_num) / (cq.interval[1] - cq.interval[0]))
    else:
        conic = None
        if qc.kind is QuadKind.MDQ_TYPE2:
            conic = _closed_form_via_relabel(cq, tol)
            if conic is not None:
                method = CLOSED_FORM
                h = geometry(conic).center.x
        if conic is None:
            h, iterations = maximize_ratio_sq(cq)
            conic = family.coefficients(cq, h)

    geom = geometry(conic)
    ratio_sq = family.spectral(cq, h).ratio_sq

    if qc.tangential and qc.kind is not QuadKind.GENERAL:
        # Tangential MDQ: the optimum is the inscribed circle.  Report the
        # exact circle (the computed conic is that circle up to roundoff);
        # the center's distance to the side on the y axis is its abscissa.
        cy = newton_segment(cq).y_at(h)
        geom = EllipseGeometry(Point2(h, cy), h, h, 0.0, None, geom.delta)
        gamma = math.pi / 2.0
    else:
        gamma = conjugate_diameter_angle(geom)

    return MinEccResult(h, conic, geom, gamma, alpha, ratio_sq,
                        method, iterations, abs(gamma - alpha))
