"""Order-alpha information gain measures.

Orders are plain floats in ``[0, inf]``; gains are floats in nats and may be
``+inf`` or ``-inf`` where a support condition forces it. Everything is
evaluated in log space, so orders in the hundreds do not overflow.

Two quasi-arithmetic (Kolmogorov-Nagumo) means appear throughout:

* kind ``"f"``:        ``f(t) = exp((alpha - 1) t)``, the mean behind Renyi divergence;
* kind ``"f-tilde"``:  ``f(t) = exp(((alpha - 1) / alpha) t)``, the mean behind the
  gain of a belief ``phi`` measured against a reference ``q`` at frequencies ``p``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import (
    AbsoluteContinuityViolation,
    DimensionMismatch,
    EmptyConditioningSet,
    InvalidSpec,
    UnsupportedOrder,
)
from .simplex import Dist, subset_indices

# Below this distance from 1 the exact alpha = 1 branch is used.
ORDER_ONE_BAND = 1e-6

KINDS = ("f", "f-tilde")


def check_order(alpha):
    """Return ``alpha`` as a float, rejecting negative values and NaN."""
    a = float(alpha)
    if math.isnan(a) or a < 0:
        raise UnsupportedOrder(f"order must lie in [0, inf], got {alpha!r}")
    return a


def is_order_one(alpha):
    return abs(alpha - 1.0) < ORDER_ONE_BAND


@dataclass(frozen=True)
class KNMeanSpec:
    kind: str
    alpha: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "alpha", check_order(self.alpha))
        if self.kind == "f-tilde" and self.alpha == 0:
            raise InvalidSpec("the f-tilde mean degenerates at alpha = 0; "
                              "use ftilde_mean, which implements the min branch")


def _weights(weights):
    if isinstance(weights, Dist):
        return weights.probs
    return np.asarray(weights, dtype=float)


def kn_mean(values, weights, spec):
    """Quasi-arithmetic mean ``f^{-1}(sum_i w_i f(v_i))``.

    Zero-weight entries are dropped before evaluation, so they may hold any
    value including infinities. At ``alpha = 1`` both kinds reduce to the
    weighted arithmetic mean; at ``alpha = inf`` kind ``"f"`` is the max over
    the positive-weight entries and kind ``"f-tilde"`` uses ``f(t) = exp(t)``.
    """
    v = np.asarray(values, dtype=float)
    w = _weights(weights)
    if v.shape != w.shape:
        raise DimensionMismatch(f"{v.size} values for {w.size} weights")
    keep = w > 0
    v, w = v[keep], w[keep]
    a = spec.alpha
    if is_order_one(a):
        return float(np.dot(w, v))
    if math.isinf(a):
        if spec.kind == "f":
            return float(v.max())
        c = 1.0
    else:
        c = a - 1.0 if spec.kind == "f" else (a - 1.0) / a
    return float(logsumexp(np.log(w) + c * v) / c)


def ftilde_mean(values, weights, alpha):
    """The f-tilde mean including its ``alpha = 0`` limit, the minimum."""
    alpha = check_order(alpha)
    if alpha == 0:
        v = np.asarray(values, dtype=float)
        w = _weights(weights)
        if v.shape != w.shape:
            raise DimensionMismatch(f"{v.size} values for {w.size} weights")
        return float(v[w > 0].min())
    return kn_mean(values, weights, KNMeanSpec("f-tilde", alpha))


def elementary_gain(p, q):
    """``log(p / q)`` for a single outcome; the order plays no role.

    ``0/0`` is taken as 0 and ``0/q`` as ``-inf``.
    """
    p, q = float(p), float(q)
    if q > 0:
        return math.log(p / q) if p > 0 else -math.inf
    if p > 0:
        raise AbsoluteContinuityViolation(f"p = {p} on an outcome where q = 0")
    return 0.0


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


def _same_alphabet(*dists):
    first = dists[0].labels
    for d in dists[1:]:
        if d.labels != first:
            raise DimensionMismatch(f"alphabets differ: {list(first)} vs {list(d.labels)}")


def _log_ratios(num, den):
    """``log(num/den)`` with ``+inf`` where only ``den`` vanishes."""
    out = _log(num) - _log(np.where(den > 0, den, 1.0))
    out[(den == 0) & (num > 0)] = math.inf
    out[(den == 0) & (num == 0)] = 0.0
    return out


def renyi_divergence(p, q, alpha):
    """Renyi divergence ``D_alpha(p || q)`` in nats.

    Uses the conventions ``0 log(0/0) = 0`` and ``0^a 0^(1-a) = 0``. Returns
    ``+inf`` when ``supp(p)`` is not inside ``supp(q)`` for ``alpha >= 1``;
    for ``alpha < 1`` only the overlapping mass contributes.
    """
    _same_alphabet(p, q)
    a = check_order(alpha)
    P, Q = p.probs, q.probs
    sp = P > 0
    if a == 0:
        reach = Q[sp].sum()
        return -math.log(reach) if reach > 0 else math.inf
    if a < 1 and not is_order_one(a):
        both = sp & (Q > 0)
        if not both.any():
            return math.inf
        t = a * np.log(P[both]) + (1 - a) * np.log(Q[both])
        return float(logsumexp(t) / (a - 1))
    if np.any(Q[sp] == 0):
        return math.inf
    lr = np.log(P[sp]) - np.log(Q[sp])
    if is_order_one(a):
        return float(np.dot(P[sp], lr))
    if math.isinf(a):
        return float(lr.max())
    return float(logsumexp(np.log(P[sp]) + (a - 1) * lr) / (a - 1))


def renyi_divergence_subset(p, q, b, alpha):
    """Relative information of ``p`` to ``q`` restricted to the event ``b``.

    The kind-``f`` mean of the elementary gains over ``b``, weighted by
    ``p(x) / p(b)``. Equals `renyi_divergence` when ``b`` is the whole
    alphabet and the elementary gain when ``b`` is a singleton.
    """
    _same_alphabet(p, q)
    a = check_order(alpha)
    idx = subset_indices(p, b)
    pb = p.probs[idx].sum()
    if not pb > 0:
        raise EmptyConditioningSet("the event has zero probability under p")
    P, Q = p.probs[idx], q.probs[idx]
    return kn_mean(_log_ratios(P, Q), P / pb, KNMeanSpec("f", a))


def _ftilde_parts(phi, q, p):
    _same_alphabet(phi, q, p)
    sp = p.probs > 0
    if np.any(q.probs[sp] == 0):
        raise AbsoluteContinuityViolation("q vanishes on part of supp(p)")
    return sp


def ftilde_gain(phi, q, p, alpha):
    r"""Gain of belief ``phi`` over reference ``q``, with frequencies ``p``.

    For ``alpha`` in ``(0, 1) U (1, inf)``::

        alpha / (alpha - 1) * log sum_x p(x) (phi(x) / q(x)) ** ((alpha - 1) / alpha)

    with the limits ``log min_{supp p} phi/q`` at 0, ``sum p log(phi/q)`` at 1
    and ``log sum p phi/q`` at infinity. A zero of ``phi`` on ``supp(p)``
    drives the value to ``-inf`` for ``alpha <= 1``; above 1 that term just
    drops out of the sum.

    Raises
    ------
    AbsoluteContinuityViolation
        If ``q(x) = 0`` for some ``x`` with ``p(x) > 0``.
    """
    a = check_order(alpha)
    sp = _ftilde_parts(phi, q, p)
    v = _log(phi.probs[sp]) - np.log(q.probs[sp])
    return ftilde_mean(v, p.probs[sp], a)


def ftilde_gain_subset(phi, q, p, b, alpha):
    """`ftilde_gain` with frequencies renormalized to ``p(x) / p(b)`` on ``b``."""
    a = check_order(alpha)
    idx = subset_indices(p, b)
    pb = p.probs[idx].sum()
    if not pb > 0:
        raise EmptyConditioningSet("the event has zero probability under p")
    sp = _ftilde_parts(phi, q, p)
    keep = np.zeros_like(sp)
    keep[idx] = True
    keep &= sp
    v = _log(phi.probs[keep]) - np.log(q.probs[keep])
    return ftilde_mean(v, p.probs[keep] / pb, a)


def ftilde_gain_batch(phis, q, p, alpha):
    """Vectorized `ftilde_gain` over the rows of an ``(n, |X|)`` array of beliefs."""
    a = check_order(alpha)
    _same_alphabet(q, p)
    phis = np.asarray(phis, dtype=float)
    sp = p.probs > 0
    if np.any(q.probs[sp] == 0):
        raise AbsoluteContinuityViolation("q vanishes on part of supp(p)")
    v = _log(phis[:, sp]) - np.log(q.probs[sp])
    w = p.probs[sp]
    if a == 0:
        return v.min(axis=1)
    if is_order_one(a):
        with np.errstate(invalid="ignore"):
            return v @ w
    c = 1.0 if math.isinf(a) else (a - 1.0) / a
    return logsumexp(np.log(w) + c * v, axis=1) / c


def renyi_entropy(p, alpha):
    """Renyi entropy ``H_alpha(p)`` in nats."""
    a = check_order(alpha)
    P = p.probs[p.probs > 0]
    if a == 0:
        return math.log(P.size)
    if is_order_one(a):
        return float(-np.dot(P, np.log(P)))
    if math.isinf(a):
        return float(-math.log(P.max()))
    return float(logsumexp(a * np.log(P)) / (1 - a))


def arimoto_cond_entropy(j, alpha):
    """Arimoto conditional entropy ``H_alpha(X | Y)`` of a joint ``mass[x, y]``.

    The ``alpha = 0`` value is the limit ``log max_y |supp P_{X|Y=y}|``.
    """
    a = check_order(alpha)
    m = j.mass
    py = m.sum(axis=0)
    live = py > 0
    m, py = m[:, live], py[live]
    if a == 0:
        return math.log(int((m > 0).sum(axis=0).max()))
    if is_order_one(a):
        nz = m > 0
        ratio = m[nz] / np.broadcast_to(py, m.shape)[nz]
        return float(-np.dot(m[nz], np.log(ratio)))
    if math.isinf(a):
        return float(-math.log(m.max(axis=0).sum()))
    inner = logsumexp(a * _log(m), axis=0) / a
    return float(a / (1 - a) * logsumexp(inner))
