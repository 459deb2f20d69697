"""Order-alpha information leakage for finite priors and channels.

The measures live in `alphaleak.gain` (divergences, f- and f-tilde means)
and `alphaleak.leakage` (Sibson/Arimoto mutual information, per-output and
maximal leakage, optimal adversaries). `alphaleak.oracle` re-derives the
optima by lattice search and projected ascent, and `alphaleak.markov`
checks post-processing on ``U - X - Y`` chains.
"""

from .errors import *  # noqa: F401,F403
from .gain import (
    KNMeanSpec,
    arimoto_cond_entropy,
    elementary_gain,
    ftilde_gain,
    ftilde_gain_subset,
    ftilde_mean,
    kn_mean,
    renyi_divergence,
    renyi_divergence_subset,
    renyi_entropy,
)
from .leakage import (
    LeakageReport,
    alpha_leakage,
    arimoto_mi,
    leakage_report,
    maximal_leakage,
    optimal_phi,
    optimal_strategy,
    pointwise_maximal_leakage,
    scaled_posterior_divergence,
    sibson_mi,
    xy_elementary_fmean,
    y_elementary_leakage,
)
from .simplex import (
    Channel,
    Dist,
    EventSubset,
    Joint,
    bsc,
    compose,
    constant_channel,
    dist,
    identity_channel,
    joint,
    make_channel,
    make_dist,
    make_subset,
    output_marginal,
    posterior,
    scaled_dist,
    support,
    uniform,
)

__version__ = "0.1.0"
