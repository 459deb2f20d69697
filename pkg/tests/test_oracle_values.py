"""The frozen expected values match their high-precision derivation."""

import pytest

from oracle_values import FROZEN, derive

DERIVED = derive()


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_value_matches_derivation(key):
    want = DERIVED[key]
    got = FROZEN[key]
    if isinstance(got, tuple):
        assert got == pytest.approx(tuple(float(w) for w in want), abs=1e-15)
    else:
        assert got == pytest.approx(float(want), abs=1e-15)
