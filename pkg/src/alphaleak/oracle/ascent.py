"""Projected first-order search for the f-tilde maximizer."""

import logging
import math

import numpy as np

from ..errors import AbsoluteContinuityViolation, NoConvergence, UnsupportedOrder
from ..gain import _same_alphabet, check_order, ftilde_gain, is_order_one
from ..simplex import Dist, _frozen
from .certificates import ftilde_gap
from .grid import OptResult

log = logging.getLogger(__name__)

# Lower bound on iterates over supp(p); the gradient is unbounded on the boundary there.
INTERIOR_FLOOR = 1e-12


def project_simplex(v, floor=0.0):
    """Euclidean projection of ``v`` onto ``{x : x_i >= floor_i, sum x = 1}``.

    ``floor`` is a scalar or a per-coordinate array with ``sum(floor) < 1``.
    """
    n = v.size
    floor = np.broadcast_to(np.asarray(floor, dtype=float), v.shape)
    total = 1.0 - floor.sum()
    w = v - floor
    u = np.sort(w)[::-1]
    css = np.cumsum(u) - total
    ind = np.arange(1, n + 1)
    hits = np.nonzero(u - css / ind > 0)[0]
    # Cancellation on huge inputs can leave no hit; the top coordinate then takes all mass,
    # set exactly since w - theta would cancel too.
    rho = hits[-1] if hits.size else 0
    if rho == 0:
        out = floor.copy()
        out[np.argmax(w)] += total
        return out
    theta = css[rho] / (rho + 1.0)
    return np.maximum(w - theta, 0.0) + floor


def projected_ascent_max_ftilde(q, p, alpha, tol=1e-10, max_iter=500, strict=False):
    """Maximize the f-tilde gain over the simplex by projected ascent.

    The inner sum ``h = sum_x p (phi/q)^c`` with ``c = (alpha - 1)/alpha`` is
    concave for ``alpha > 1`` and is ascended; for ``alpha < 1`` it is convex
    and descended (the search direction flips sign). At ``alpha = 1`` the
    log-average ``sum_x p log(phi/q)`` is ascended.

    ``h`` is separable, so its Hessian is diagonal. Each step scales the
    gradient by the inverse curvature (without that scaling plain gradient
    steps crawl when the optimum has small coordinates). The direction is then
    projected onto the simplex's tangent plane in that metric, and the step is
    cut to stay above an interior floor of ``1e-12`` on ``supp(p)``. A step is
    kept only if it improves ``h``; otherwise it is halved. Coordinates outside
    ``supp(p)`` do not enter ``h`` and stay at zero.

    Iteration stops once the duality gap of the concave gain drops to ``tol``,
    which certifies the value to within ``tol`` of the true maximum, or once no
    representable step improves the objective. In the second case the value is
    optimal to working precision while the first-order gap, reported as
    ``certified_gap``, may still exceed ``tol``.

    Raises
    ------
    UnsupportedOrder
        For ``alpha`` equal to 0 or infinity (non-smooth objectives).
    NoConvergence
        Only when ``strict`` is set and ``max_iter`` is exhausted; otherwise the
        best iterate is returned with ``converged=False``.
    """
    _same_alphabet(q, p)
    a = check_order(alpha)
    if a == 0 or math.isinf(a):
        raise UnsupportedOrder("projected ascent needs a finite positive order")
    P, Q = p.probs, q.probs
    sp = P > 0
    if np.any(Q[sp] == 0):
        raise AbsoluteContinuityViolation("q vanishes on part of supp(p)")
    p_s, lq = P[sp], np.log(Q[sp])
    log_mode = is_order_one(a)
    c = 0.0 if log_mode else (a - 1.0) / a
    sign = 1.0 if c >= 0 else -1.0
    floor = INTERIOR_FLOOR

    def inner(f):
        if log_mode:
            return float(p_s @ (np.log(f) - lq))
        return float(p_s @ np.exp(c * (np.log(f) - lq)))

    def direction(f):
        """Curvature-scaled ascent direction for ``sign * h``, summing to zero.

        Coordinates resting on the floor that the step would push lower are
        held fixed, and the direction is recomputed on the others.
        """
        if log_mode:
            g, curv = p_s / f, p_s / f**2
        else:
            g = p_s * c * np.exp((c - 1.0) * np.log(f) - c * lq)
            curv = np.abs(g * (c - 1.0) / f)
        w = 1.0 / curv
        free = np.ones(f.size, dtype=bool)
        while True:
            wf = np.where(free, w, 0.0)
            lam = float(wf @ (sign * g)) / wf.sum()
            d = (sign * g - lam) * wf
            pinned = free & (f <= 2.0 * floor) & (d < 0)
            if not pinned.any() or pinned.sum() == free.sum():
                return d
            free &= ~pinned

    def gain(h):
        return h if log_mode else math.log(h) / c

    phi = np.zeros_like(P)
    f = project_simplex(np.full(p_s.size, 1.0 / p_s.size), floor)
    h = inner(f)
    gap = math.inf
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        phi[sp] = f
        gap = ftilde_gap(phi, P, Q, a, gain(h), 0.0)
        if gap <= tol:
            converged = True
            break
        d = direction(f)
        shrink = (d < 0) & (f > 2.0 * floor)
        step = 1.0
        if shrink.any():
            step = min(1.0, 0.9 * float(np.min((f[shrink] - floor) / -d[shrink])))
        while step > 1e-300:
            cand = project_simplex(f + step * d, floor)
            hc = inner(cand)
            if sign * hc > sign * h:
                f, h = cand, hc
                break
            step *= 0.5
        else:
            converged = True
            break
    phi[sp] = f
    result = OptResult(
        argmax=Dist(p.labels, _frozen(phi)),
        value=ftilde_gain(Dist(p.labels, _frozen(phi)), q, p, a),
        iterations=it,
        certified_gap=gap,
        converged=converged,
    )
    if not converged:
        log.warning("projected ascent stopped after %d iterations with gap %.3g", it, gap)
        if strict:
            raise NoConvergence(f"no convergence after {it} iterations (gap {gap:.3g})", result)
    return result
