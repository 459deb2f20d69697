"""Suboptimality bounds for candidate optima on the simplex.

The f-tilde gain ``g(phi)`` is the log of a weighted power mean of
``phi / q`` with exponent ``(alpha - 1) / alpha <= 1``, hence concave in
``phi``. The information-radius objective ``J(Q)`` is convex in ``Q``. For a
concave ``g`` and any point ``phi`` the linearization gives::

    max g - g(phi) <= max_i dg/dphi_i - sum_i phi_i dg/dphi_i

(the Frank-Wolfe duality gap). At non-smooth orders, and where the gradient
blows up at the boundary, a modulus-of-continuity bound on the lattice
spacing ``delta`` is used instead.
"""

import math

import numpy as np
from scipy.special import logsumexp

from ..gain import is_order_one

# Allowance for floating-point rounding in the certified values.
ROUNDING = 64 * np.finfo(float).eps


def _duality_gap(phi, grad):
    if not np.all(np.isfinite(grad)):
        return math.inf
    return max(float(grad.max() - phi @ grad), 0.0)


def _slack(value):
    return ROUNDING * max(1.0, abs(value)) if math.isfinite(value) else 0.0


def ftilde_gradient(phi, P, Q, alpha, value):
    """Gradient of the f-tilde gain at ``phi`` (zero off ``supp(P)``)."""
    sp = P > 0
    grad = np.zeros_like(phi)
    f, p, q = phi[sp], P[sp], Q[sp]
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if math.isinf(alpha):
            grad[sp] = (p / q) * math.exp(-value)
        elif is_order_one(alpha):
            grad[sp] = p / f
        else:
            c = (alpha - 1.0) / alpha
            grad[sp] = np.exp(np.log(p) + (c - 1.0) * np.log(f) - c * np.log(q) - c * value)
    return grad


def ftilde_gap(phi, P, Q, alpha, value, delta):
    """Upper bound on ``max g - value`` given that ``value = g(phi)`` is a lattice maximum.

    ``delta`` is the L-infinity rounding radius of the lattice (its spacing).
    Pass ``delta = 0`` for points not known to be lattice maxima; only the
    concavity bound is then available.
    """
    sp = P > 0
    if not math.isfinite(value):
        return math.inf
    if alpha == 0:
        if delta == 0:
            return math.inf
        # Every maximizer satisfies phi_i >= q_i exp(value) on supp(P).
        m = Q[sp] * math.exp(value)
        if np.any(m <= delta):
            return math.inf
        return float(np.max(np.log(m) - np.log(m - delta))) + _slack(value)
    gap = _duality_gap(phi, ftilde_gradient(phi, P, Q, alpha, value))
    if delta > 0 and 1 < alpha < math.inf and not is_order_one(alpha):
        c = (alpha - 1.0) / alpha
        s = math.exp(c * value)
        omega = delta ** c * float(np.sum(P[sp] * Q[sp] ** (-c)))
        if s > omega:
            gap = min(gap, math.log(s / (s - omega)) / c)
    return gap + _slack(value)


def radius_gap(Qy, log_b, alpha, value, delta, py=None, col_max=None):
    """Upper bound on ``value - min J`` for the information-radius objective.

    ``log_b[y] = log sum_x P(x) W(y|x)^alpha`` (indicator of ``W > 0`` at
    ``alpha = 0``); ``py`` is the output law (needed at ``alpha = 1``) and
    ``col_max[y] = max_x W(y|x)`` (needed at ``alpha = inf``).
    """
    if not math.isfinite(value):
        return math.inf
    if math.isinf(alpha):
        live = col_max > 0
        m = col_max[live] * math.exp(-value)
        if delta == 0 or np.any(m <= delta):
            return math.inf
        return float(np.max(np.log(m) - np.log(m - delta))) + _slack(value)
    if is_order_one(alpha):
        live = py > 0
        with np.errstate(divide="ignore"):
            neg_grad = np.where(live, py / Qy, 0.0)
    else:
        live = np.isfinite(log_b)
        log_s = (alpha - 1.0) * value
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            if alpha == 0:
                terms = log_b[live] - log_s
            else:
                terms = log_b[live] - alpha * np.log(Qy[live]) - log_s
        neg_grad = np.zeros_like(Qy)
        neg_grad[live] = np.exp(terms)
    # J is convex, so the gap is the duality gap of -J.
    return _duality_gap(Qy, neg_grad) + _slack(value)


def log_radius_weights(P, W, alpha):
    """``log sum_x P(x) W(y|x)^alpha`` per output, over ``supp(P)``."""
    sp = P > 0
    P, W = P[sp], W[sp]
    with np.errstate(divide="ignore"):
        if alpha == 0:
            return np.log(P @ (W > 0))
        return logsumexp(np.log(P)[:, None] + alpha * np.log(W), axis=0)
