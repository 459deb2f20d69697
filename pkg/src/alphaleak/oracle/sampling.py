"""Seeded random instances: distributions, channels and adversary strategies."""

import numpy as np

from ..simplex import default_labels, dist, make_channel


def random_dist(rng, n, labels=None, prefix="x"):
    """Flat-Dirichlet draw on ``n`` symbols."""
    return dist(rng.dirichlet(np.ones(n)), labels, prefix)


def random_channel(rng, n_in, n_out, input_labels=None, output_labels=None):
    """Channel whose rows are independent flat-Dirichlet draws."""
    return make_channel(rng.dirichlet(np.ones(n_out), size=n_in), input_labels, output_labels)


def random_strategy_sample(seed, shape, count, input_labels=None, output_labels=None):
    """Yield ``count`` random strategies ``P_{Xhat|Y}`` of shape ``(|Y|, |X|)``.

    Rows are drawn from the flat Dirichlet, i.e. uniformly on the simplex.
    The stream depends only on ``seed``.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    n_y, n_x = shape
    input_labels = input_labels if input_labels is not None else default_labels(n_y, "y")
    output_labels = output_labels if output_labels is not None else default_labels(n_x, "x")
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_channel(rng, n_y, n_x, input_labels, output_labels)
