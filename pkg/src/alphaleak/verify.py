"""Property suite behind ``alphaleak verify``.

Every property is checked on the problem's own prior and channel, then on
``trials`` seeded random instances. Each check measures a deviation and
compares it with an allowance. Equalities measure ``|lhs - rhs|``, one-sided
claims measure how far the claimed inequality is overshot (0 when it holds),
and the lattice checks measure ``|oracle - closed form|`` against the
certified gap.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AlphaLeakError, VerificationFailure
from .gain import ftilde_gain, ftilde_gain_batch, renyi_divergence
from .leakage import (
    arimoto_mi,
    live_outputs,
    maximal_leakage,
    optimal_phi,
    optimal_strategy,
    per_y_fmean,
    sibson_mi,
    xy_elementary_fmean,
    y_elementary_leakage,
)
from .markov import (
    chain_from_attribute,
    identity_chain,
    inverse_tilt_chain,
    lalpha_consistency,
    postprocess_check_elementary,
    postprocess_check_sibson,
    random_chain,
    scaled_sup_check,
)
from .oracle import (
    GridSpec,
    brute_force_max_ftilde,
    projected_ascent_max_ftilde,
    random_channel,
    random_dist,
    random_strategy_sample,
    sibson_infradius_check,
)
from .oracle.grid import MAX_DIMENSION
from .simplex import Dist, _frozen, output_marginal, posterior, scaled_dist

PROPERTIES = (
    "Simplex-reconstruction",
    "Prop1-equality",
    "Prop1-dominance",
    "Prop1-lattice",
    "Prop1-ascent",
    "Strategy-per-output",
    "Sibson-per-output-mean",
    "Strategy-sibson",
    "Strategy-dominance",
    "Arimoto-Sibson-bridge",
    "MaxL-closed-form",
    "Postprocess-elementary",
    "Postprocess-sibson",
    "Postprocess-achievability",
    "Scaled-sup",
    "Lalpha-consistency",
    "InfoRadius",
)

DEFAULT_ALPHAS = (0.0, 0.3, 0.5, 0.7, 1.0, 2.0, 5.0, math.inf)

EQ_TOL = 1e-10
DOMINANCE_TOL = 1e-12
ASCENT_TOL = 1e-7
RADIUS_FLOOR = 1e-4

# Lattice denominators used on random instances, by dimension; the problem's
# own instance uses the requested resolution where the grid size allows.
TRIAL_DENOMINATOR = {1: 1000, 2: 1000, 3: 250, 4: 40}
FULL_DENOMINATOR_MAX_DIM = 3
# Random beliefs / strategies per check on the problem instance and on random trials.
SPEC_SAMPLES, TRIAL_SAMPLES = 1000, 100
SPEC_ATTRIBUTES = 20


@dataclass
class PropertyResult:
    name: str
    checks: int = 0
    failures: int = 0
    worst: float = 0.0
    errors: list = field(default_factory=list)

    @property
    def passed(self):
        return self.failures == 0

    def record(self, deviation, allowed):
        deviation = float(deviation)
        self.checks += 1
        if not deviation <= allowed:
            self.failures += 1
        if math.isnan(deviation) or math.isnan(self.worst):
            self.worst = math.nan
        else:
            self.worst = max(self.worst, deviation)

    def error(self, exc):
        self.record(math.nan, 0.0)
        self.errors.append(f"{type(exc).__name__}: {exc}")

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        worst = f"{self.worst:.3e}" if self.checks else "n/a"
        return f"{self.name}\t{status}\t{worst}"


@dataclass
class VerifyReport:
    results: dict

    @property
    def failed(self):
        return [name for name, r in self.results.items() if not r.passed]

    @property
    def passed(self):
        return not self.failed

    def lines(self):
        return [r.line() for r in self.results.values()]

    def render(self):
        return "".join(line + "\n" for line in self.lines())

    def raise_for_failure(self):
        if self.failed:
            raise VerificationFailure(self.failed)


def corrupted_maximizer(p, q, alpha):
    """Fault-injection hook: the closed-form maximizer pulled halfway to uniform."""
    phi = optimal_phi(p, q, alpha).probs
    return Dist(p.labels, _frozen(0.5 * phi + 0.5 / phi.size))


class _Suite:
    def __init__(self, alphas, maximizer):
        self.alphas = list(alphas)
        self.maximizer = maximizer
        self.results = {name: PropertyResult(name) for name in PROPERTIES}

    def check(self, name, fn, allowed=None):
        """Record ``fn()`` under ``name``; library errors count as failures.

        ``fn`` returns a deviation, or ``(deviation, allowed)`` when the
        allowance is computed per instance.
        """
        r = self.results[name]
        try:
            out = fn()
        except (AlphaLeakError, FloatingPointError) as exc:
            r.error(exc)
            return
        if allowed is None:
            out, allowed = out
        r.record(out, allowed)

    # -- instance-level suites -------------------------------------------------

    def instance(self, prior, channel, rng, k_for_dim, samples):
        px = prior.probs
        py = output_marginal(prior, channel)
        ys = live_outputs(prior, channel)

        def reconstruction():
            back = sum(py.prob(y) * posterior(prior, channel, y).probs for y in ys)
            return np.max(np.abs(back - px))

        self.check("Simplex-reconstruction", reconstruction, 1e-12)

        for a in self.alphas:
            finite = not math.isinf(a)
            for y in ys:
                p = posterior(prior, channel, y)
                self.pair(p, prior, a, rng, k_for_dim, samples)
            self.leakage(prior, channel, a, rng, samples)
            if finite:
                self.check("Arimoto-Sibson-bridge",
                           lambda: abs(arimoto_mi(prior, channel, a)
                                       - sibson_mi(scaled_dist(prior, a), channel, a)), EQ_TOL)
            n_out = len(channel.output_labels)
            if n_out <= 3:
                self.check("InfoRadius", lambda: self._radius(prior, channel, a, k_for_dim(n_out)))

        def maxl():
            base = sibson_mi(prior, channel, math.inf)
            other = np.where(px > 0, rng.dirichlet(np.ones(px.size)), 0.0)
            moved = Dist(prior.labels, _frozen(other / other.sum()))
            return max(abs(base - maximal_leakage(prior, channel)),
                       abs(sibson_mi(moved, channel, math.inf) - base))

        self.check("MaxL-closed-form", maxl, DOMINANCE_TOL)

    def _radius(self, prior, channel, a, k):
        res = sibson_infradius_check(prior, channel, a,
                                     GridSpec.from_denominator(len(channel.output_labels), k))
        return abs(res.value - sibson_mi(prior, channel, a)), max(res.certified_gap, RADIUS_FLOOR)

    def pair(self, p, q, a, rng, k_for_dim, samples):
        """Checks on one (frequency p, reference q) pair at order ``a``."""
        d = renyi_divergence(p, q, a)
        self.check("Prop1-equality",
                   lambda: abs(ftilde_gain(self.maximizer(p, q, a), q, p, a) - d), EQ_TOL)

        def dominance():
            phis = rng.dirichlet(np.ones(len(p)), size=samples)
            return max(0.0, float(np.max(ftilde_gain_batch(phis, q, p, a))) - d)

        self.check("Prop1-dominance", dominance, DOMINANCE_TOL)

        if len(p) <= MAX_DIMENSION:
            def lattice():
                grid = GridSpec.from_denominator(len(p), k_for_dim(len(p)))
                res = brute_force_max_ftilde(q, p, a, grid)
                if res.value - d > DOMINANCE_TOL:
                    return res.value - d, DOMINANCE_TOL
                return d - res.value, res.certified_gap

            self.check("Prop1-lattice", lattice)

        if a != 0 and not math.isinf(a):
            self.check("Prop1-ascent",
                       lambda: abs(projected_ascent_max_ftilde(q, p, a).value - d), ASCENT_TOL)

    def leakage(self, prior, channel, a, rng, samples):
        sib = sibson_mi(prior, channel, a)
        ys = live_outputs(prior, channel)
        try:
            strategy = optimal_strategy(prior, channel, a, maximizer=self.maximizer)
        except AlphaLeakError as exc:
            self.results["Strategy-per-output"].error(exc)
            self.results["Strategy-sibson"].error(exc)
            strategy = None
        if strategy is not None:
            def elementary():
                devs = []
                for y in ys:
                    row = Dist(prior.labels, strategy.rows[strategy.input_labels.index(y)])
                    gain = ftilde_gain(row, prior, posterior(prior, channel, y), a)
                    devs.append(abs(gain - y_elementary_leakage(prior, channel, y, a)))
                return max(devs)

            self.check("Strategy-per-output", elementary, EQ_TOL)
            self.check("Strategy-sibson",
                       lambda: abs(xy_elementary_fmean(strategy, prior, channel, a) - sib), EQ_TOL)
        self.check("Sibson-per-output-mean", lambda: abs(per_y_fmean(prior, channel, a) - sib), EQ_TOL)

        def dominance():
            seed = int(rng.integers(2**63))
            worst = -math.inf
            for s in random_strategy_sample(seed, (len(ys), len(prior)), samples,
                                            tuple(ys), prior.labels):
                worst = max(worst, xy_elementary_fmean(s, prior, channel, a) - sib)
            return max(0.0, worst)

        self.check("Strategy-dominance", dominance, DOMINANCE_TOL)

    def chain(self, chain):
        """Post-processing checks on one ``U - X - Y`` chain."""
        ys = live_outputs(chain.prior_x, chain.main_channel)
        for a in self.alphas:
            self.check("Postprocess-elementary",
                       lambda: max(0.0, -min(postprocess_check_elementary(chain, y, a) for y in ys)),
                       DOMINANCE_TOL)
            self.check("Postprocess-sibson", lambda: max(0.0, -postprocess_check_sibson(chain, a)),
                       DOMINANCE_TOL)
            if a == 0 or math.isinf(a):
                continue

            def scaled_sup():
                return max(0.0, max(u - x for u, x in (scaled_sup_check(chain, y, a) for y in ys)))

            self.check("Scaled-sup", scaled_sup, DOMINANCE_TOL)
            self.check("Lalpha-consistency",
                       lambda: abs(np.subtract(*lalpha_consistency(chain, a))), EQ_TOL)

    def achievability(self, prior, channel):
        ident = identity_chain(prior, channel)
        ys = live_outputs(prior, channel)
        for a in self.alphas:
            self.check("Postprocess-achievability",
                       lambda: max(max(abs(postprocess_check_elementary(ident, y, a)) for y in ys),
                                   abs(postprocess_check_sibson(ident, a))), DOMINANCE_TOL)
            if a == 0 or math.isinf(a):
                continue

            def witness():
                w = inverse_tilt_chain(prior, channel, a)
                return max(abs(scaled_sup_check(w, y, a)[0]
                               - y_elementary_leakage(prior, channel, y, a)) for y in ys)

            self.check("Postprocess-achievability", witness, EQ_TOL)


def _random_attribute(rng, prior, max_extra=2):
    n_u = int(rng.integers(1, len(prior) + max_extra + 1))
    return random_channel(rng, len(prior), n_u, prior.labels, tuple(f"u{i}" for i in range(n_u)))


def run_verify(spec, alphas=DEFAULT_ALPHAS, seed=0, grid_res=1e-3, trials=100,
               maximizer=optimal_phi):
    """Run every property on ``spec`` and on ``trials`` random instances.

    Parameters
    ----------
    spec : ProblemSpec
    alphas : sequence of float
        Orders to check; ``math.inf`` is allowed.
    seed : int
        All randomness derives from it, so reports are reproducible.
    grid_res : float
        Lattice resolution ``1/K`` for the problem instance.
    trials : int
        Random instances (|X|, |Y| in 2..3) and random Markov chains on top.
    maximizer : callable
        Closed-form maximizer under test; replaced only for fault injection.

    Returns
    -------
    VerifyReport
        Call ``raise_for_failure()`` to turn failures into `VerificationFailure`.
    """
    if trials < 0:
        raise ValueError("trials must be non-negative")
    full_k = GridSpec(2, grid_res).k
    suite = _Suite(sorted(set(float(a) for a in alphas)), maximizer)

    def spec_k(dim):
        return full_k if dim <= FULL_DENOMINATOR_MAX_DIM else min(full_k, TRIAL_DENOMINATOR[4])

    def trial_k(dim):
        return min(full_k, TRIAL_DENOMINATOR[dim])

    rng = np.random.default_rng([seed, 0])
    prior, channel = spec.prior, spec.channel
    suite.instance(prior, channel, rng, spec_k, SPEC_SAMPLES)
    suite.achievability(prior, channel)
    if spec.attr_channel is not None:
        suite.chain(chain_from_attribute(prior, spec.attr_channel, channel))
    for _ in range(SPEC_ATTRIBUTES):
        suite.chain(chain_from_attribute(prior, _random_attribute(rng, prior), channel))

    for t in range(trials):
        trng = np.random.default_rng([seed, 1, t])
        n_x, n_y = (int(v) for v in trng.integers(2, 4, size=2))
        p = random_dist(trng, n_x)
        w = random_channel(trng, n_x, n_y)
        suite.instance(p, w, trng, trial_k, TRIAL_SAMPLES)
        suite.achievability(p, w)
        suite.chain(random_chain(trng))
    return VerifyReport(suite.results)
