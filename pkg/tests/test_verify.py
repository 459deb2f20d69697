import math

import numpy as np
import pytest

from alphaleak import bsc, dist, optimal_phi, uniform
from alphaleak.errors import ValidationError, VerificationFailure
from alphaleak.problem import ProblemSpec
from alphaleak.verify import PROPERTIES, PropertyResult, corrupted_maximizer, run_verify


def test_result_tracks_worst_and_failures():
    r = PropertyResult("x")
    assert r.line() == "x\tPASS\tn/a"
    r.record(1e-13, 1e-12)
    r.record(5e-13, 1e-12)
    assert r.passed and r.worst == 5e-13
    r.record(2e-12, 1e-12)
    assert not r.passed and r.failures == 1 and r.line() == "x\tFAIL\t2.000e-12"


def test_nan_and_errors_fail():
    r = PropertyResult("x")
    r.record(math.nan, 1.0)
    assert not r.passed and math.isnan(r.worst)
    e = PropertyResult("y")
    e.error(ValidationError("bad"))
    assert not e.passed and e.errors and "bad" in e.errors[0]


def test_corrupted_maximizer_is_a_distribution_but_not_optimal():
    p, q = dist([0.75, 0.25]), uniform(2)
    bad = corrupted_maximizer(p, q, 2)
    assert bad.probs.sum() == pytest.approx(1.0)
    assert bad.probs == pytest.approx(0.5 * optimal_phi(p, q, 2).probs + 0.25)


def test_report_covers_every_property_in_order():
    report = run_verify(ProblemSpec(uniform(2), bsc(0.25)), alphas=(0.5, 2, math.inf), trials=1)
    assert tuple(report.results) == PROPERTIES
    assert report.passed
    report.raise_for_failure()


def test_fault_is_reported_by_name():
    spec = ProblemSpec(uniform(2), bsc(0.25))
    report = run_verify(spec, alphas=(2,), trials=0, maximizer=corrupted_maximizer)
    assert "Prop1-equality" in report.failed
    with pytest.raises(VerificationFailure) as exc:
        report.raise_for_failure()
    assert "Prop1-equality" in str(exc.value)


def test_verify_is_seeded():
    spec = ProblemSpec(dist([0.2, 0.8]), bsc(0.1))
    a = run_verify(spec, alphas=(0.5, 2), seed=3, trials=2)
    b = run_verify(spec, alphas=(0.5, 2), seed=3, trials=2)
    assert a.render() == b.render()
    assert np.all([line.split("\t")[1] == "PASS" for line in a.lines()])
