"""Exhaustive search over the composition lattice of the simplex."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import (
    AbsoluteContinuityViolation,
    DimensionMismatch,
    ResolutionNotUnitFraction,
    ValidationError,
)
from ..gain import KNMeanSpec, _same_alphabet, check_order, is_order_one, kn_mean, renyi_divergence, ftilde_gain
from ..simplex import Dist, _check_pair, _frozen, default_labels, output_marginal
from . import _backend
from .certificates import ftilde_gap, log_radius_weights, radius_gap

MAX_DIMENSION = 4
MAX_DENOMINATOR = 2000


@dataclass(frozen=True)
class GridSpec:
    """Lattice ``{n / k : n in N^d, sum n = k}`` with ``resolution = 1/k``."""

    dimension: int
    resolution: float

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise ValidationError(f"dimension must be a positive integer, got {self.dimension!r}")
        if not 0 < self.resolution <= 1:
            raise ResolutionNotUnitFraction(f"resolution must lie in (0, 1], got {self.resolution!r}")
        k = round(1.0 / self.resolution)
        if abs(k * self.resolution - 1.0) > 1e-9:
            raise ResolutionNotUnitFraction(f"resolution {self.resolution!r} is not 1/k for an integer k")

    @classmethod
    def from_denominator(cls, dimension, k):
        return cls(dimension, 1.0 / k)

    @property
    def k(self):
        return round(1.0 / self.resolution)

    @property
    def size(self):
        return math.comb(self.k + self.dimension - 1, self.dimension - 1)


def parse_resolution(text):
    """Accept ``"1/K"`` or a decimal literal."""
    try:
        frac = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ResolutionNotUnitFraction(f"cannot parse resolution {text!r}") from None
    if frac <= 0 or frac > 1:
        raise ResolutionNotUnitFraction(f"resolution must lie in (0, 1], got {text!r}")
    if frac.numerator != 1:
        raise ResolutionNotUnitFraction(f"resolution {text!r} is not 1/k for an integer k")
    return 1.0 / frac.denominator


@dataclass
class OptResult:
    argmax: Dist
    value: float
    iterations: int
    certified_gap: float
    converged: bool = True


def enumerate_simplex(spec, labels=None):
    """Yield every lattice point as a `Dist`, in lexicographic order."""
    d, k = spec.dimension, spec.k
    labels = tuple(labels) if labels is not None else default_labels(d)
    comp = [0] * d
    comp[-1] = k
    partial = 0
    while True:
        yield Dist(labels, _frozen(np.array(comp, dtype=float) / k))
        i = d - 2
        while i >= 0:
            if partial < k:
                comp[i] += 1
                partial += 1
                comp[-1] = k - partial
                break
            partial -= comp[i]
            comp[i] = 0
            i -= 1
        if i < 0:
            return


def _check_size(spec):
    if spec.dimension > MAX_DIMENSION or spec.k > MAX_DENOMINATOR:
        raise ValidationError(
            f"lattice search is limited to dimension <= {MAX_DIMENSION} and "
            f"resolution >= 1/{MAX_DENOMINATOR}; use projected ascent instead")


def _ftilde_objective(P, Q, alpha):
    """Kernel encoding of the f-tilde gain; returns (mode, c, a, active, offset)."""
    sp = P > 0
    a = np.zeros_like(P)
    lq = np.log(np.where(sp, Q, 1.0))
    if alpha == 0:
        a[sp] = -lq[sp]
        return _backend.MIN, 0.0, a, sp, 0.0
    if is_order_one(alpha):
        a[sp] = P[sp]
        return _backend.LINEAR, 0.0, a, sp, -float(P[sp] @ lq[sp])
    c = 1.0 if math.isinf(alpha) else (alpha - 1.0) / alpha
    a[sp] = np.log(P[sp]) - c * lq[sp]
    return _backend.POWER, c, a, sp, 0.0


def brute_force_max_ftilde(q, p, alpha, spec):
    """Maximize ``ftilde_gain(phi, q, p, alpha)`` over every lattice point ``phi``.

    The returned value is re-evaluated with `ftilde_gain` at the lattice
    argmax. ``certified_gap`` bounds how far the continuous maximum can lie
    above it (see `certificates.ftilde_gap`).
    """
    _same_alphabet(q, p)
    a = check_order(alpha)
    if spec.dimension != len(p):
        raise DimensionMismatch(f"grid dimension {spec.dimension} != alphabet size {len(p)}")
    _check_size(spec)
    P, Q = p.probs, q.probs
    if np.any(Q[P > 0] == 0):
        raise AbsoluteContinuityViolation("q vanishes on part of supp(p)")
    mode, c, coef, active, _ = _ftilde_objective(P, Q, a)
    comp, _, n = _backend.lattice_argmax(spec.k, spec.dimension, mode, c,
                                         np.ascontiguousarray(coef), active.astype(np.uint8))
    phi = Dist(p.labels, _frozen(np.array(comp, dtype=float) / spec.k))
    value = ftilde_gain(phi, q, p, a)
    gap = ftilde_gap(phi.probs, P, Q, a, value, spec.resolution)
    return OptResult(phi, value, n, gap)


def radius_objective(prior, channel, alpha, q_y):
    """Kind-f mean over inputs of ``D_alpha(P_{Y|X=x} || Q_Y)``, weights ``prior``."""
    divs = [renyi_divergence(channel.row(x), q_y, alpha) for x in channel.input_labels]
    return kn_mean(divs, prior, KNMeanSpec("f", alpha))


def sibson_infradius_check(prior, channel, alpha, spec):
    """Minimize the f-mean divergence from the channel rows over lattice output laws.

    The minimum over all output laws is Sibson mutual information; the
    lattice minimum lies above it by at most ``certified_gap``.
    """
    _check_pair(prior, channel)
    a = check_order(alpha)
    n_out = len(channel.output_labels)
    if spec.dimension != n_out:
        raise DimensionMismatch(f"grid dimension {spec.dimension} != output alphabet size {n_out}")
    _check_size(spec)
    P, W = prior.probs, channel.rows
    sp = P > 0
    log_b = py = col_max = None
    if math.isinf(a):
        col_max = W[sp].max(axis=0)
        live = col_max > 0
        coef = np.zeros(n_out)
        coef[live] = -np.log(col_max[live])
        mode, c = _backend.MIN, 0.0
    elif is_order_one(a):
        py = output_marginal(prior, channel).probs
        live = py > 0
        coef = np.where(live, py, 0.0)
        mode, c = _backend.LINEAR, 0.0
    else:
        log_b = log_radius_weights(P, W, a)
        live = np.isfinite(log_b)
        coef = np.where(live, log_b, 0.0)
        mode, c = _backend.POWER, 1.0 - a
    comp, _, n = _backend.lattice_argmax(spec.k, n_out, mode, c,
                                         np.ascontiguousarray(coef), live.astype(np.uint8))
    q_y = Dist(channel.output_labels, _frozen(np.array(comp, dtype=float) / spec.k))
    value = radius_objective(prior, channel, a, q_y)
    gap = radius_gap(q_y.probs, log_b, a, value, spec.resolution, py=py, col_max=col_max)
    return OptResult(q_y, value, n, gap)
