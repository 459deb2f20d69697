import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaleak import (
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
from alphaleak.errors import (
    DimensionMismatch,
    DuplicateLabel,
    EmptyConditioningSet,
    NegativeMass,
    NotNormalized,
    UnsupportedOrder,
    ValidationError,
    ZeroProbabilityOutput,
)
from oracle_values import FROZEN

masses = st.lists(st.floats(0.01, 10.0), min_size=2, max_size=5)


def test_make_dist_symmetric():
    d = make_dist(["a", "b"], [0.5, 0.5])
    assert d.labels == ("a", "b")
    assert d.probs.tolist() == [0.5, 0.5]


def test_make_dist_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        make_dist(["a", "b"], [0.5, 0.6])


def test_make_dist_renormalizes_within_tolerance():
    d = make_dist(["a", "b"], [0.500000001, 0.499999999], tol=1e-6)
    assert d.probs.sum() == 1.0


def test_make_dist_other_invariants():
    with pytest.raises(NegativeMass):
        make_dist(["a", "b"], [1.2, -0.2])
    with pytest.raises(DuplicateLabel):
        make_dist(["a", "a"], [0.5, 0.5])
    with pytest.raises(DimensionMismatch):
        make_dist(["a"], [0.5, 0.5])
    with pytest.raises(NegativeMass):
        make_dist(["a", "b"], [math.nan, 1.0])


def test_field_is_named_in_errors():
    with pytest.raises(ValidationError, match=r"^prior: ") as exc:
        make_dist(["a", "b"], [0.5, 0.6], field="prior")
    assert exc.value.field == "prior"
    with pytest.raises(ValidationError, match=r"channel\[1\]"):
        make_channel([[0.5, 0.5], [0.9, 0.2]])


def test_renormalization_is_idempotent(rng):
    for _ in range(200):
        d = dist(rng.dirichlet(np.ones(4)))
        assert make_dist(d.labels, d.probs) == d


def test_output_marginal_examples():
    assert output_marginal(uniform(2), identity_channel(2)).probs.tolist() == [0.5, 0.5]
    assert output_marginal(uniform(2), bsc(0.25)).probs.tolist() == [0.5, 0.5]
    got = output_marginal(dist([0.8, 0.2]), bsc(0.25)).probs
    assert got == pytest.approx(FROZEN["marginal_08_bsc"], abs=1e-15)


def test_posterior_examples():
    assert posterior(uniform(2), identity_channel(2), "y0").probs.tolist() == [1.0, 0.0]
    assert posterior(uniform(2), bsc(0.25), "y0").probs.tolist() == [0.75, 0.25]
    for y in ("y0", "y1"):
        assert posterior(dist([1.0, 0.0]), bsc(0.25), y).probs.tolist() == [1.0, 0.0]


def test_posterior_of_impossible_output():
    with pytest.raises(ZeroProbabilityOutput):
        posterior(dist([1.0, 0.0]), identity_channel(2), "y1")


def test_joint_examples():
    assert joint(uniform(2), identity_channel(2)).mass.tolist() == [[0.5, 0.0], [0.0, 0.5]]
    assert joint(uniform(2), bsc(0.25)).mass.tolist() == [[0.375, 0.125], [0.125, 0.375]]
    assert joint(dist([1.0, 0.0]), bsc(0.25)).mass.tolist() == [[0.75, 0.25], [0.0, 0.0]]


def test_scaled_dist_examples():
    p = dist([0.8, 0.2])
    assert scaled_dist(p, 1) == p
    assert scaled_dist(p, 2).probs == pytest.approx(FROZEN["tilt_08_a2"], abs=1e-15)
    assert scaled_dist(uniform(2), 7).probs.tolist() == [0.5, 0.5]


def test_scaled_dist_extended_orders():
    assert scaled_dist(dist([0.7, 0.3, 0.0]), 0).probs.tolist() == [0.5, 0.5, 0.0]
    with pytest.raises(UnsupportedOrder):
        scaled_dist(uniform(2), math.inf)
    with pytest.raises(UnsupportedOrder):
        scaled_dist(uniform(2), -1)


def test_scaled_dist_large_order_does_not_overflow():
    got = scaled_dist(dist([0.6, 0.4]), 2000).probs
    assert got[0] == pytest.approx(1.0) and np.all(np.isfinite(got))


def test_support_examples():
    assert support(dist([0.5, 0.5, 0.0], ["a", "b", "c"])).members == {"a", "b"}
    assert support(dist([1.0, 0.0], ["a", "b"])).members == {"a"}
    assert len(support(uniform(4))) == 4


def test_make_subset_validation():
    p = uniform(3)
    assert make_subset(p, ["x0", "x2"]).members == {"x0", "x2"}
    with pytest.raises(EmptyConditioningSet):
        make_subset(p, [])
    with pytest.raises(ValidationError):
        make_subset(p, ["nope"])


def test_compose_and_constant_channel():
    attr = make_channel([[0.9, 0.1], [0.1, 0.9]], ["u0", "u1"], ["x0", "x1"])
    main = make_channel(bsc(0.25).rows, ["x0", "x1"], ["y0", "y1"])
    assert compose(attr, main).rows == pytest.approx(np.array([[0.7, 0.3], [0.3, 0.7]]))
    c = constant_channel([0.2, 0.8], 3)
    assert c.shape == (3, 2) and np.all(c.rows == [0.2, 0.8])
    with pytest.raises(DimensionMismatch):
        compose(main, attr)


def test_prior_channel_alphabet_mismatch():
    with pytest.raises(DimensionMismatch):
        output_marginal(uniform(3), bsc(0.25))


@settings(max_examples=60, deadline=None)
@given(masses, st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_posteriors_reconstruct_prior(w, n_out, seed):
    prior = dist(np.array(w) / sum(w))
    rows = np.random.default_rng(seed).dirichlet(np.ones(n_out), size=len(w))
    ch = make_channel(rows)
    py = output_marginal(prior, ch)
    back = sum(py.prob(y) * posterior(prior, ch, y).probs for y in ch.output_labels)
    assert np.max(np.abs(back - prior.probs)) <= 1e-12
    assert np.max(np.abs(joint(prior, ch).mass.sum(axis=1) - prior.probs)) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(masses, st.floats(0.01, 20.0), st.floats(0.01, 5.0))
def test_tilt_ignores_unnormalized_scale(w, alpha, scale):
    a = np.array(w)
    p1, p2 = dist(a / a.sum()), dist(scale * a / (scale * a).sum())
    assert scaled_dist(p1, alpha).probs == pytest.approx(scaled_dist(p2, alpha).probs, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(masses, st.floats(0.05, 10.0), st.floats(0.05, 10.0))
def test_tilts_compose_multiplicatively(w, a, b):
    p = dist(np.array(w) / sum(w))
    lhs = scaled_dist(scaled_dist(p, a), b).probs
    assert np.max(np.abs(lhs - scaled_dist(p, a * b).probs)) <= 1e-12
