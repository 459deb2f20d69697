"""Leakage measures and the closed-form optimal adversary.

The adversary observes ``y`` and commits to a soft estimate ``P_{Xhat|Y=y}``
of the input. Its f-tilde gain against the prior, at the posterior's
frequencies, is largest at a tilted posterior; the maximum is the Renyi
divergence of posterior to prior (the per-output leakage). Averaging the
per-output leakages with the f-tilde mean under ``P_Y`` gives Sibson mutual
information.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .errors import (
    AbsoluteContinuityViolation,
    DimensionMismatch,
    UnsupportedOrder,
    ZeroProbabilityOutput,
)
from .gain import (
    _log,
    _same_alphabet,
    arimoto_cond_entropy,
    check_order,
    ftilde_mean,
    is_order_one,
    renyi_divergence,
    renyi_entropy,
)
from .simplex import (
    Channel,
    Dist,
    _check_pair,
    _frozen,
    joint,
    output_marginal,
    posterior,
    scaled_dist,
)

# Relative tolerance for membership in the argmax set of p/q at alpha = inf.
ARGMAX_RTOL = 1e-12


def optimal_phi(p, q, alpha):
    """Belief maximizing ``ftilde_gain(., q, p, alpha)``.

    Finite ``alpha`` not in {0, 1}: proportional to ``p^alpha / q^(alpha-1)``.
    ``alpha = 1`` returns ``p``; ``alpha = inf`` spreads mass uniformly over the
    maximizers of ``p/q``. At ``alpha = 0`` the maximizer is ``q`` conditioned
    on ``supp(p)``, which is ``q`` itself whenever ``p`` has full support.
    """
    _same_alphabet(p, q)
    a = check_order(alpha)
    P, Q = p.probs, q.probs
    sp = P > 0
    out = np.zeros_like(P)
    if a == 0:
        reach = Q[sp].sum()
        if not reach > 0:
            raise AbsoluteContinuityViolation("q puts no mass on supp(p)")
        out[sp] = Q[sp] / reach
        return Dist(p.labels, _frozen(out))
    if (a > 1 or is_order_one(a)) and np.any(Q[sp] == 0):
        raise AbsoluteContinuityViolation("q vanishes on part of supp(p)")
    if is_order_one(a):
        return p
    live = sp & (Q > 0)
    if not live.any():
        raise AbsoluteContinuityViolation("q puts no mass on supp(p)")
    lp, lq = np.log(P[live]), np.log(Q[live])
    if math.isinf(a):
        lr = lp - lq
        top = lr >= lr.max() + math.log1p(-ARGMAX_RTOL)
        w = top.astype(float)
    else:
        logw = a * lp - (a - 1) * lq
        w = np.exp(logw - logw.max())
    out[live] = w / w.sum()
    return Dist(p.labels, _frozen(out))


def y_elementary_leakage(prior, channel, y, alpha):
    """Leakage at output ``y``: ``D_alpha(P_{X|Y=y} || P_X)``."""
    return renyi_divergence(posterior(prior, channel, y), prior, alpha)


def pointwise_maximal_leakage(prior, channel, y):
    """``log max_x P_{Y|X}(y|x) / P_Y(y)`` over ``supp(prior)``."""
    return y_elementary_leakage(prior, channel, y, math.inf)


def sibson_mi(prior, channel, alpha):
    r"""Sibson mutual information from the direct formula::

        alpha / (alpha - 1) * log sum_y (sum_x P(x) P(y|x)^alpha) ** (1 / alpha)

    ``alpha = 1`` is Shannon mutual information, ``alpha = inf`` is maximal
    leakage ``log sum_y max_{x in supp P} P(y|x)`` and ``alpha = 0`` is
    ``-log max_y P_X({x : P(y|x) > 0})``.
    """
    _check_pair(prior, channel)
    a = check_order(alpha)
    sp = prior.probs > 0
    P, W = prior.probs[sp], channel.rows[sp]
    if a == 0:
        reach = P @ (W > 0)
        return float(-math.log(reach.max()))
    if is_order_one(a):
        py = P @ W
        m = P[:, None] * W
        nz = m > 0
        ratio = W[nz] / np.broadcast_to(py, W.shape)[nz]
        return float(np.dot(m[nz], np.log(ratio)))
    if math.isinf(a):
        return float(math.log(W.max(axis=0).sum()))
    inner = logsumexp(np.log(P)[:, None] + a * _log(W), axis=0)
    return float(a / (a - 1) * logsumexp(inner / a))


def maximal_leakage(prior, channel):
    """``log sum_y max_{x in supp(prior)} P(y|x)``."""
    _check_pair(prior, channel)
    W = channel.rows[prior.probs > 0]
    return float(math.log(W.max(axis=0).sum()))


def live_outputs(prior, channel):
    """Output labels with positive probability, in alphabet order."""
    py = output_marginal(prior, channel)
    return [y for y, v in zip(py.labels, py.probs) if v > 0]


def optimal_strategy(prior, channel, alpha, maximizer=optimal_phi):
    """Worst-case adversary ``P*_{Xhat|Y}``: one tilted posterior per live output.

    Outputs of zero probability are left out, so the returned channel's
    inputs are the live output labels of ``channel``.
    """
    ys = live_outputs(prior, channel)
    rows = [maximizer(posterior(prior, channel, y), prior, alpha).probs for y in ys]
    return Channel(tuple(ys), prior.labels, _frozen(np.vstack(rows)))


def xy_elementary_fmean(strategy, prior, channel, alpha):
    """f-tilde mean of ``log(P_{Xhat|Y}(x|y) / P_X(x))`` under the joint ``P_{Y|X} P_X``."""
    a = check_order(alpha)
    j = joint(prior, channel)
    if strategy.output_labels != prior.labels:
        raise DimensionMismatch("strategy must estimate symbols of the prior's alphabet")
    values, weights = [], []
    for k, y in enumerate(j.y_labels):
        col = j.mass[:, k]
        if not col.sum() > 0:
            continue
        try:
            row = strategy.rows[strategy.input_labels.index(y)]
        except ValueError:
            raise DimensionMismatch(f"strategy has no row for live output {y!r}") from None
        nz = col > 0
        values.append(_log(row[nz]) - np.log(prior.probs[nz]))
        weights.append(col[nz])
    return ftilde_mean(np.concatenate(values), np.concatenate(weights), a)


def arimoto_mi(prior, channel, alpha):
    """Arimoto mutual information ``H_alpha(X) - H^A_alpha(X|Y)``."""
    return renyi_entropy(prior, alpha) - arimoto_cond_entropy(joint(prior, channel), alpha)


def _finite_positive(alpha, what):
    a = check_order(alpha)
    if a == 0 or math.isinf(a):
        raise UnsupportedOrder(f"{what} is defined for finite alpha > 0, got {alpha!r}")
    return a


def alpha_leakage(prior_u, channel_yu, alpha):
    """Sibson mutual information under the alpha-tilted prior.

    This is the tunable alpha-leakage that coincides with Arimoto mutual
    information. Only finite positive orders are accepted.
    """
    a = _finite_positive(alpha, "alpha_leakage")
    return sibson_mi(scaled_dist(prior_u, a), channel_yu, a)


def scaled_posterior_divergence(prior_u, channel_yu, y, alpha):
    r"""Per-output divergence under the tilted prior, in closed form::

        1 / (alpha - 1) * log sum_u P_{U_a}(u) (P(y|u) / P_Y(y)) ** alpha

    where ``P_{U_a}`` is the tilted prior and ``P_Y`` the output law it induces.
    """
    a = check_order(alpha)
    if math.isinf(a) or is_order_one(a):
        raise UnsupportedOrder(f"closed form needs finite alpha != 1, got {alpha!r}")
    pa = scaled_dist(prior_u, a)
    _check_pair(pa, channel_yu)
    w = channel_yu.rows[:, channel_yu.output_index(y)]
    py = float(pa.probs @ w)
    if not py > 0:
        raise ZeroProbabilityOutput(f"output {y!r} has zero probability under the tilted prior")
    live = (pa.probs > 0) & (w > 0)
    if a == 0:
        return float(-math.log(pa.probs[live].sum()))
    t = np.log(pa.probs[live]) + a * (np.log(w[live]) - math.log(py))
    return float(logsumexp(t) / (a - 1))


@dataclass
class LeakageReport:
    """Per-output leakages, their aggregate and the adversary achieving them."""

    alpha: float
    per_y: dict
    aggregate: float
    strategy: Channel
    dropped_outputs: list = field(default_factory=list)


def leakage_report(prior, channel, alpha):
    a = check_order(alpha)
    ys = live_outputs(prior, channel)
    per_y = {y: y_elementary_leakage(prior, channel, y, a) for y in ys}
    return LeakageReport(
        alpha=a,
        per_y=per_y,
        aggregate=sibson_mi(prior, channel, a),
        strategy=optimal_strategy(prior, channel, a),
        dropped_outputs=[y for y in channel.output_labels if y not in per_y],
    )


def per_y_fmean(prior, channel, alpha):
    """Sibson MI rebuilt as the f-tilde mean of per-output leakages under ``P_Y``."""
    a = check_order(alpha)
    py = output_marginal(prior, channel)
    ys = live_outputs(prior, channel)
    vals = [y_elementary_leakage(prior, channel, y, a) for y in ys]
    w = [py.prob(y) for y in ys]
    return ftilde_mean(vals, w, a)
