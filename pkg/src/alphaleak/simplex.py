"""Validated finite distributions, channels and joints.

Every object here is immutable after construction: the probability arrays are
flagged read-only and labels are stored as tuples. Downstream code assumes
exact normalization, so constructors renormalize whatever they accept.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateLabel,
    EmptyConditioningSet,
    NegativeMass,
    NotNormalized,
    UnsupportedOrder,
    ValidationError,
    ZeroProbabilityOutput,
)

NORMALIZATION_TOL = 1e-9


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.flags.writeable = False
    return arr


def default_labels(n, prefix="x"):
    return tuple(f"{prefix}{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class Dist:
    """Probability vector over an ordered, labeled alphabet."""

    labels: tuple
    probs: np.ndarray

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, Dist):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.probs, other.probs)

    def __repr__(self):
        body = ", ".join(f"{l}={p:.6g}" for l, p in zip(self.labels, self.probs))
        return f"Dist({body})"

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown symbol {label!r}") from None

    def prob(self, label):
        return float(self.probs[self.index(label)])

    def mass(self, subset):
        return float(sum(self.probs[self.index(m)] for m in subset.members))


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic matrix; row ``i`` is the output law given input ``i``.

    Adversary strategies use the same type with observed outputs as inputs
    and estimated symbols as outputs.
    """

    input_labels: tuple
    output_labels: tuple
    rows: np.ndarray

    @property
    def shape(self):
        return self.rows.shape

    def __eq__(self, other):
        if not isinstance(other, Channel):
            return NotImplemented
        return (
            self.input_labels == other.input_labels
            and self.output_labels == other.output_labels
            and np.array_equal(self.rows, other.rows)
        )

    def __repr__(self):
        return f"Channel({list(self.input_labels)} -> {list(self.output_labels)}, rows={self.rows.tolist()})"

    def row(self, label):
        i = self.input_labels.index(label)
        return Dist(self.output_labels, self.rows[i])

    def output_index(self, label):
        try:
            return self.output_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown output symbol {label!r}") from None


@dataclass(frozen=True, eq=False)
class Joint:
    """Joint mass ``mass[x, y]`` on a product alphabet."""

    x_labels: tuple
    y_labels: tuple
    mass: np.ndarray

    def x_marginal(self):
        return Dist(self.x_labels, _frozen(self.mass.sum(axis=1)))

    def y_marginal(self):
        return Dist(self.y_labels, _frozen(self.mass.sum(axis=0)))


@dataclass(frozen=True)
class EventSubset:
    """Non-empty set of symbols, used as a conditioning event."""

    members: frozenset

    def __len__(self):
        return len(self.members)


def make_dist(labels, probs, tol=NORMALIZATION_TOL, field=None):
    """Build a validated `Dist`.

    Parameters
    ----------
    labels : sequence of hashable
        Symbol identifiers, unique.
    probs : array_like
        Non-negative masses, same length as ``labels``.
    tol : float
        Accepted deviation of the total from 1; accepted vectors are divided
        by their sum.
    field : str, optional
        Name used in error messages.

    Raises
    ------
    NegativeMass, NotNormalized, DuplicateLabel, DimensionMismatch
    """
    labels = tuple(labels)
    probs = np.asarray(probs, dtype=float)
    if probs.ndim != 1 or len(labels) != probs.shape[0]:
        raise DimensionMismatch(
            f"{len(labels)} labels for {probs.size} probabilities", field)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"labels are not unique: {list(labels)}", field)
    if not np.all(np.isfinite(probs)):
        raise NegativeMass("probabilities must be finite", field)
    if np.any(probs < 0):
        raise NegativeMass(f"negative probability in {probs.tolist()}", field)
    total = probs.sum()
    if abs(total - 1.0) > tol:
        raise NotNormalized(f"probabilities sum to {float(total)!r}", field)
    # Vectors already normalized to rounding are kept as is, so renormalizing is idempotent.
    if abs(total - 1.0) > 4 * np.finfo(float).eps * max(len(labels), 1):
        probs = probs / total
    return Dist(labels, _frozen(probs))


def dist(probs, labels=None, prefix="x", tol=NORMALIZATION_TOL):
    """Shorthand for `make_dist` with generated labels."""
    probs = np.asarray(probs, dtype=float)
    if labels is None:
        labels = default_labels(probs.size, prefix)
    return make_dist(labels, probs, tol)


def uniform(n, labels=None, prefix="x"):
    return dist(np.full(n, 1.0 / n), labels, prefix)


def make_channel(rows, input_labels=None, output_labels=None,
                 tol=NORMALIZATION_TOL, field="channel"):
    """Build a validated `Channel` from a row-per-input matrix."""
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or rows.shape[0] == 0 or rows.shape[1] == 0:
        raise DimensionMismatch(f"expected a non-empty matrix, got shape {rows.shape}", field)
    n_in, n_out = rows.shape
    input_labels = tuple(input_labels) if input_labels is not None else default_labels(n_in, "x")
    output_labels = tuple(output_labels) if output_labels is not None else default_labels(n_out, "y")
    if len(input_labels) != n_in:
        raise DimensionMismatch(f"{len(input_labels)} input labels for {n_in} rows", field)
    if len(set(input_labels)) != n_in:
        raise DuplicateLabel(f"input labels are not unique: {list(input_labels)}", field)
    clean = np.empty_like(rows)
    for i in range(n_in):
        clean[i] = make_dist(output_labels, rows[i], tol, field=f"{field}[{i}]").probs
    return Channel(input_labels, output_labels, _frozen(clean))


def identity_channel(n, input_labels=None, output_labels=None):
    return make_channel(np.eye(n), input_labels, output_labels)


def bsc(eps, input_labels=None, output_labels=None):
    """Binary symmetric channel with crossover probability ``eps``."""
    return make_channel([[1 - eps, eps], [eps, 1 - eps]], input_labels, output_labels)


def constant_channel(row, n_inputs, input_labels=None, output_labels=None):
    row = np.asarray(row, dtype=float)
    return make_channel(np.tile(row, (n_inputs, 1)), input_labels, output_labels)


def compose(first, second):
    """Channel ``X -> Z`` obtained by feeding ``first`` (X -> Y) into ``second`` (Y -> Z)."""
    if first.output_labels != second.input_labels:
        raise DimensionMismatch("output alphabet of the first channel must match "
                                "the input alphabet of the second")
    return make_channel(first.rows @ second.rows, first.input_labels, second.output_labels)


def _check_pair(prior, channel):
    if prior.labels != channel.input_labels:
        raise DimensionMismatch(
            f"prior labels {list(prior.labels)} do not match channel inputs "
            f"{list(channel.input_labels)}")


def output_marginal(prior, channel):
    """Output law ``P_Y(y) = sum_x P_{Y|X}(y|x) P_X(x)``."""
    _check_pair(prior, channel)
    py = prior.probs @ channel.rows
    return Dist(channel.output_labels, _frozen(py / py.sum()))


def posterior(prior, channel, y):
    """Bayes posterior ``P_{X|Y=y}``.

    Raises
    ------
    ZeroProbabilityOutput
        If ``P_Y(y) = 0``.
    """
    _check_pair(prior, channel)
    j = channel.output_index(y)
    num = prior.probs * channel.rows[:, j]
    total = num.sum()
    if not total > 0:
        raise ZeroProbabilityOutput(f"output {y!r} has zero probability")
    return Dist(prior.labels, _frozen(num / total))


def joint(prior, channel):
    """Joint mass ``P_{Y|X}(y|x) P_X(x)`` indexed ``[x, y]``."""
    _check_pair(prior, channel)
    mass = prior.probs[:, None] * channel.rows
    return Joint(prior.labels, channel.output_labels, _frozen(mass))


def scaled_dist(p, alpha):
    """Tilted distribution ``p^alpha / sum(p^alpha)``.

    ``alpha = 0`` gives the uniform law on ``supp(p)`` and ``alpha = 1`` returns
    ``p`` itself. The ``alpha -> inf`` limit (uniform on the modes) is not
    offered here.
    """
    alpha = float(alpha)
    if not alpha >= 0:
        raise UnsupportedOrder(f"order must be non-negative, got {alpha}")
    if np.isinf(alpha):
        raise UnsupportedOrder("scaled_dist needs a finite order; the alpha -> inf "
                               "limit is uniform over argmax p")
    if alpha == 1.0:
        return p
    pos = p.probs > 0
    out = np.zeros_like(p.probs)
    if alpha == 0.0:
        out[pos] = 1.0
    else:
        logw = alpha * np.log(p.probs[pos])
        out[pos] = np.exp(logw - logw.max())
    return Dist(p.labels, _frozen(out / out.sum()))


def support(p):
    """Labels carrying strictly positive mass."""
    return EventSubset(frozenset(l for l, v in zip(p.labels, p.probs) if v > 0))


def make_subset(p, members):
    """Validate ``members`` against the alphabet of ``p``."""
    members = frozenset(members)
    if not members:
        raise EmptyConditioningSet("event subset must be non-empty")
    unknown = members - set(p.labels)
    if unknown:
        raise ValidationError(f"symbols {sorted(map(str, unknown))} are not in the alphabet")
    return EventSubset(members)


def subset_indices(p, subset):
    """Indices of ``subset`` members in alphabet order."""
    return np.array([i for i, l in enumerate(p.labels) if l in subset.members], dtype=int)
