"""Expected values for the worked examples, derived without alphaleak.

`derive` evaluates every entry at 40 significant digits with mpmath, straight
from the defining sums. `FROZEN` holds the results as float literals and is
what the tests compare against; test_oracle_values checks that the two agree.
"""

import mpmath as mp

FROZEN = {
    # P_Y for prior (0.8, 0.2) through BSC(0.25)
    "marginal_08_bsc": (0.65, 0.35),
    # (0.8, 0.2) tilted at order 2
    "tilt_08_a2": (0.9411764705882353, 0.058823529411764705),
    # p = (0.75, 0.25) against uniform(2)
    "kl_post_uniform": 0.13081203594113697,
    "d2_post_uniform": 0.22314355131420976,
    "dinf_post_uniform": 0.4054651081081644,
    # kind-f mean of (0, log 2), equal weights, order 2
    "kn_f_a2": 0.4054651081081644,
    # subset divergence, p = (0.6, 0.2, 0.2), q uniform(3), B = {a, b}, order 2
    "subset_d2": 0.4054651081081644,
    # f-tilde gain of phi = (0.9, 0.1), q uniform(2), p = (0.75, 0.25), order 2
    "ftilde_09_a2": 0.22314355131420976,
    "ftilde_subset_a": 0.5877866649021191,
    "h2_08": 0.3856624808119847,
    # Arimoto conditional entropy of the BSC(0.25) + uniform joint, order 2
    "arimoto_h2_bsc": 0.4700036292457356,
    "arimoto_mi_bsc_a2": 0.22314355131420976,
    "sibson_bsc_a2": 0.22314355131420976,
    "sibson_bsc_inf": 0.4054651081081644,
    "shannon_bsc": 0.13081203594113697,
    # Sibson MI of identity(2) under the order-2 tilt of (0.8, 0.2)
    "alpha_leak_08_identity_a2": 0.3856624808119847,
    # noiseless channel, prior (0.8, 0.2), y = u0, order 2
    "scaled_post_noiseless_a2": 0.06062462181643484,
    # prior (0.8, 0.2), BSC(0.25), y = y0, order 2: D_2(posterior of tilt || tilt)
    "scaled_post_08_bsc_a2": 0.026306490255537263,
    # chain: prior_u uniform, P_{X|U} rows (0.9, 0.1)/(0.1, 0.9), main BSC(0.25)
    "chain_u_side_a2": 0.14842000511827327,
    "chain_slack_a2": 0.07472354619593648,
    "bits_sibson_bsc_a2": 0.32192809488736235,
    "bits_maxl_bsc": 0.5849625007211562,
}


def derive():
    """Recompute every `FROZEN` entry; returns a dict with the same keys."""
    mp.mp.dps = 40
    f = mp.mpf
    log, sqrt = mp.log, mp.sqrt
    half, p0, p1 = f(1) / 2, f(3) / 4, f(1) / 4
    out = {}
    out["marginal_08_bsc"] = (f("0.8") * p0 + f("0.2") * p1, f("0.8") * p1 + f("0.2") * p0)
    z = f("0.64") + f("0.04")
    out["tilt_08_a2"] = (f("0.64") / z, f("0.04") / z)
    out["kl_post_uniform"] = p0 * log(p0 / half) + p1 * log(p1 / half)
    out["d2_post_uniform"] = log(p0**2 / half + p1**2 / half)
    out["dinf_post_uniform"] = log(p0 / half)
    out["kn_f_a2"] = log(half * 1 + half * 2)
    third = f(1) / 3
    r = (f("0.6") / third, f("0.2") / third)
    out["subset_d2"] = log(p0 * r[0] + p1 * r[1])
    out["ftilde_09_a2"] = 2 * log(p0 * sqrt(f("0.9") / half) + p1 * sqrt(f("0.1") / half))
    out["ftilde_subset_a"] = log(f("0.9") / half)
    out["h2_08"] = -log(f("0.64") + f("0.04"))
    # joint [[3/8, 1/8], [1/8, 3/8]]: each column has sum of squares 10/64
    col = (f(3) / 8) ** 2 + (f(1) / 8) ** 2
    out["arimoto_h2_bsc"] = -2 * log(2 * sqrt(col))
    out["arimoto_mi_bsc_a2"] = log(2) - out["arimoto_h2_bsc"]
    inner = half * p0**2 + half * p1**2
    out["sibson_bsc_a2"] = 2 * log(2 * sqrt(inner))
    out["sibson_bsc_inf"] = log(p0 + p0)
    out["shannon_bsc"] = 2 * (half * p0 * log(p0 / half) + half * p1 * log(p1 / half))
    t = (f(16) / 17, f(1) / 17)
    out["alpha_leak_08_identity_a2"] = 2 * log(sqrt(t[0]) + sqrt(t[1]))
    out["scaled_post_noiseless_a2"] = -log(t[0])
    num = (t[0] * p0, t[1] * p1)
    post = (num[0] / sum(num), num[1] / sum(num))
    out["scaled_post_08_bsc_a2"] = log(post[0] ** 2 / t[0] + post[1] ** 2 / t[1])
    # P_{U|Y=y0} = (0.7, 0.3) against uniform
    u_post = (f("0.7"), f("0.3"))
    out["chain_u_side_a2"] = log(u_post[0] ** 2 / half + u_post[1] ** 2 / half)
    out["chain_slack_a2"] = out["d2_post_uniform"] - out["chain_u_side_a2"]
    out["bits_sibson_bsc_a2"] = out["sibson_bsc_a2"] / log(2)
    out["bits_maxl_bsc"] = out["sibson_bsc_inf"] / log(2)
    return out
