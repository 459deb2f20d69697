"""Markov chains ``U - X - Y`` and the post-processing checks built on them."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, UnsupportedOrder
from .gain import check_order, ftilde_mean, renyi_divergence
from .leakage import alpha_leakage, live_outputs, scaled_posterior_divergence, sibson_mi
from .simplex import (
    Channel,
    Dist,
    _frozen,
    compose,
    identity_channel,
    make_channel,
    output_marginal,
    posterior,
    scaled_dist,
)
from .oracle.sampling import random_channel, random_dist

# Random chains whose output law puts less than this on some symbol are redrawn.
MIN_OUTPUT_MASS = 1e-9


@dataclass(frozen=True)
class MarkovChain:
    """Attribute ``U``, data ``X`` and release ``Y`` with ``U - X - Y``.

    ``attr_channel`` is ``P_{X|U}``, ``main_channel`` is ``P_{Y|X}``;
    ``prior_x`` and ``composed`` (``P_{Y|U}``) are derived.
    """

    prior_u: Dist
    attr_channel: Channel
    main_channel: Channel
    prior_x: Dist
    composed: Channel


def build_chain(prior_u, attr_channel, main_channel):
    if prior_u.labels != attr_channel.input_labels:
        raise DimensionMismatch("prior_u labels must match the attribute channel's inputs")
    if attr_channel.output_labels != main_channel.input_labels:
        raise DimensionMismatch("attribute channel outputs must match the main channel's inputs")
    return MarkovChain(
        prior_u=prior_u,
        attr_channel=attr_channel,
        main_channel=main_channel,
        prior_x=output_marginal(prior_u, attr_channel),
        composed=compose(attr_channel, main_channel),
    )


def chain_from_attribute(prior_x, attr_given_x, main_channel):
    """Chain for an attribute given as ``P_{U|X}`` on top of a fixed ``P_X``.

    Attribute values of zero probability are dropped; ``P_{X|U}`` comes from
    Bayes' rule, so the derived ``prior_x`` reproduces ``prior_x``.
    """
    prior_u_full = output_marginal(prior_x, attr_given_x)
    us = [u for u, v in zip(prior_u_full.labels, prior_u_full.probs) if v > 0]
    rows = [posterior(prior_x, attr_given_x, u).probs for u in us]
    pu = np.array([prior_u_full.prob(u) for u in us])
    prior_u = Dist(tuple(us), _frozen(pu / pu.sum()))
    attr = make_channel(np.vstack(rows), us, prior_x.labels, field="attr_channel")
    return build_chain(prior_u, attr, main_channel)


def identity_chain(prior_x, main_channel):
    """The chain with ``U = X``; it attains both post-processing bounds."""
    return build_chain(prior_x, identity_channel(len(prior_x), prior_x.labels, prior_x.labels),
                       main_channel)


def postprocess_check_elementary(chain, y, alpha):
    """Slack ``D_a(P_{X|Y=y} || P_X) - D_a(P_{U|Y=y} || P_U)``; never negative."""
    x_side = renyi_divergence(posterior(chain.prior_x, chain.main_channel, y), chain.prior_x, alpha)
    u_side = renyi_divergence(posterior(chain.prior_u, chain.composed, y), chain.prior_u, alpha)
    return x_side - u_side


def postprocess_check_sibson(chain, alpha):
    """Slack ``I^S_a(P_X, P_{Y|X}) - I^S_a(P_U, P_{Y|U})``; never negative."""
    return (sibson_mi(chain.prior_x, chain.main_channel, alpha)
            - sibson_mi(chain.prior_u, chain.composed, alpha))


def scaled_sup_check(chain, y, alpha):
    """Per-output leakage of the tilted attribute against its data-side bound.

    Returns ``(D_a(P_{U_a|Y=y} || P_{U_a}), D_a(P_{X'|Y=y} || P_{X'}))`` where
    ``U_a`` carries the tilted prior and ``X'`` is the data law it induces
    through the same ``P_{X|U}``. The first never exceeds the second, and the
    two coincide when ``P_{X|U}`` is the identity.
    """
    a = check_order(alpha)
    if a == 0 or math.isinf(a):
        raise UnsupportedOrder(f"scaled_sup_check needs finite alpha > 0, got {alpha!r}")
    tilted = build_chain(scaled_dist(chain.prior_u, a), chain.attr_channel, chain.main_channel)
    first = renyi_divergence(posterior(tilted.prior_u, tilted.composed, y), tilted.prior_u, a)
    second = renyi_divergence(posterior(tilted.prior_x, tilted.main_channel, y), tilted.prior_x, a)
    return first, second


def inverse_tilt_chain(prior_x, main_channel, alpha):
    """``U = X`` relabeled with prior ``P_X^(1/a)``, whose tilt is exactly ``P_X``.

    Its `scaled_sup_check` first component equals ``D_a(P_{X|Y=y} || P_X)``,
    which witnesses that the bound is attained.
    """
    return identity_chain(scaled_dist(prior_x, 1.0 / alpha), main_channel)


def lalpha_consistency(chain, alpha):
    """Alpha-leakage of ``U`` two ways: direct, and as the f-tilde mean of tilted per-output divergences."""
    a = check_order(alpha)
    direct = alpha_leakage(chain.prior_u, chain.composed, a)
    tilted = scaled_dist(chain.prior_u, a)
    py = output_marginal(tilted, chain.composed)
    ys = live_outputs(tilted, chain.composed)
    if abs(a - 1.0) < 1e-6:
        vals = [renyi_divergence(posterior(tilted, chain.composed, y), tilted, a) for y in ys]
    else:
        vals = [scaled_posterior_divergence(chain.prior_u, chain.composed, y, a) for y in ys]
    return direct, ftilde_mean(vals, [py.prob(y) for y in ys], a)


def random_chain(rng, max_size=4, n_x=None, n_y=None):
    """Seeded random chain with alphabets of at most ``max_size`` symbols.

    Every row is a flat-Dirichlet draw. Draws whose output law has a symbol
    below ``MIN_OUTPUT_MASS`` are rejected and redrawn.
    """
    while True:
        n_u = int(rng.integers(1, max_size + 1))
        nx = n_x or int(rng.integers(2, max_size + 1))
        ny = n_y or int(rng.integers(2, max_size + 1))
        u_labels = tuple(f"u{i}" for i in range(n_u))
        x_labels = tuple(f"x{i}" for i in range(nx))
        prior_u = random_dist(rng, n_u, u_labels)
        attr = random_channel(rng, n_u, nx, u_labels, x_labels)
        main = random_channel(rng, nx, ny, x_labels)
        chain = build_chain(prior_u, attr, main)
        if output_marginal(chain.prior_x, main).probs.min() >= MIN_OUTPUT_MASS:
            return chain
