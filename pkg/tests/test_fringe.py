import random
from fractions import Fraction

import pytest

from mstd import setcore
from mstd.fringe import (
    HIGH_FRINGE_OFFSETS,
    LOW_FRINGE,
    format_sig_truncated,
    fringe_pair,
    monte_carlo,
    rsd_lower_bound,
    verify_fringe,
)
from mstd.scd import parse, to_set
from mstd.setcore import IntegerSet


class TestFringePair:
    def test_low_fringe_matches_its_scd(self):
        assert to_set(parse("(0|1,1,2,1,4,3,1,4,3,1,4,3,1,4,3,1,1,1)")) == LOW_FRINGE

    def test_high_fringe_matches_its_scd(self):
        assert to_set(parse("(0|1,1,1,1,4,3,1,4,3,1,4,3,1,4,3,1,1,2,1)")) == IntegerSet(
            HIGH_FRINGE_OFFSETS
        )

    def test_sizes_and_span(self):
        pair = fringe_pair(100)
        assert len(pair.low) == 19 and pair.low.max() == 39
        assert len(pair.high) == 20
        assert pair.high.min() == 100 - 41 and pair.high.max() == 99
        assert pair.middle_span == (40, 58)

    def test_complement_form(self):
        n = 100
        pair = fringe_pair(n)
        drops = {41, 40, 39, 38, 37, 33, 30, 29, 25, 22, 21, 17, 14, 13, 9, 6, 5, 4, 2, 1}
        assert pair.high == IntegerSet(n - d for d in drops)

    def test_boundary_adjacency(self):
        pair = fringe_pair(81)
        assert pair.high.min() == pair.low.max() + 1
        assert pair.middle_span == (40, 39)  # empty middle

    def test_too_small_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            fringe_pair(80)


class TestVerifyFringe:
    @pytest.mark.parametrize("n", [81, 100, 128, 200])
    def test_identities_hold(self, n):
        report = verify_fringe(n)
        assert report.passed
        assert all(c.passed for c in report.checks)

    def test_cross_attribution(self):
        # the printed interval [n-41, n+38] is the cross sum set, not the
        # restricted self-sums of the high fringe
        report = verify_fringe(100)
        assert report.cross_attribution == "low+high"

    def test_high_restricted_identity_directly(self):
        n = 100
        pair = fringe_pair(n)
        uu = set(setcore.restricted_sumset(pair.high))
        expected = set(range(2 * n - 82, 2 * n - 1))
        expected -= {2 * n - 2, 2 * n - 4, 2 * n - 12, 2 * n - 82}
        assert uu == expected
        assert uu != set(range(n - 41, n + 39))

    def test_eight_missing_differences(self):
        n = 123
        pair = fringe_pair(n)
        diffs = {u - l for u in pair.high for l in pair.low}
        for v in (n - 12, n - 20, n - 28, n - 36):
            assert v not in diffs
        # and they are the only gaps in the top band of the difference set
        band_missing = {v for v in range(n - 41, n) if v not in diffs}
        assert band_missing == {n - 12, n - 20, n - 28, n - 36}


class TestLowerBound:
    def test_exact_value(self):
        b = rsd_lower_bound()
        assert b == Fraction(131069, 2**98)
        assert b == (1 - 8 * (Fraction(1, 2**19) + Fraction(1, 2**20))) * Fraction(1, 2**81)

    def test_display(self):
        assert format_sig_truncated(rsd_lower_bound()) == "4.135e-25"

    def test_factor_close_to_one(self):
        factor = rsd_lower_bound() / Fraction(1, 2**81)
        assert Fraction(9999, 10000) < factor < 1

    def test_plain_power_comparison(self):
        assert format_sig_truncated(Fraction(1, 2**81)) == "4.135e-25"
        assert abs(float(Fraction(1, 2**81)) - 4.1359e-25) < 1e-28

    def test_truncation_keeps_more_digits_elsewhere(self):
        assert format_sig_truncated(Fraction(123456, 1000)) == "1.234e+02"
        assert format_sig_truncated(Fraction(1, 3), sig=6) == "3.33333e-01"


def _screened_rsd_property(n, samples, seed):
    """Middles whose restricted sums miss nothing outside the seven
    tolerated values must give RSD sets."""
    pair = fringe_pair(n)
    base = pair.low.mask
    for u in pair.high:
        base |= 1 << u
    middle_bits = n - 81
    allowed = {0, 8, 78, 2 * n - 82, 2 * n - 12, 2 * n - 4, 2 * n - 2}
    rng = random.Random(seed)
    screened = rejected = 0
    for _ in range(samples):
        m = base | (rng.getrandbits(middle_bits) << 40 if middle_bits else 0)
        rbits = setcore._restricted_bits(m)
        missing = {x for x in range(0, 2 * n - 1) if not (rbits >> x) & 1}
        if not missing <= allowed:
            rejected += 1
            continue
        screened += 1
        a = IntegerSet.from_mask(m)
        assert setcore.classify(a).rsd
    return screened, rejected


class TestConditionedRsd:
    @pytest.mark.parametrize("n", [81, 90, 100, 128])
    def test_screened_middles_are_rsd(self, n):
        screened, rejected = _screened_rsd_property(n, samples=10_000, seed=1729)
        # failures of the screen are bounded by 8*(2^-19 + 2^-20) per the
        # construction, so essentially every sampled middle passes
        assert screened + rejected == 10_000
        assert rejected <= 5


class TestMonteCarlo:
    def test_deterministic_given_seed(self):
        a = monte_carlo("MSTD", 30, 5000, seed=9)
        b = monte_carlo("MSTD", 30, 5000, seed=9)
        assert a.hits == b.hits and a.proportion == b.proportion

    def test_deterministic_with_workers(self):
        a = monte_carlo("MSTD", 30, 4000, seed=5, workers=2)
        b = monte_carlo("MSTD", 30, 4000, seed=5, workers=2)
        assert a.hits == b.hits

    def test_conditioned_rsd_density(self):
        est = monte_carlo("RSD", 100, 2000, seed=7, conditioned_on_fringe=True)
        assert est.proportion >= 0.9

    def test_bound_is_conservative(self):
        est = monte_carlo("RSD", 100, 2000, seed=11, conditioned_on_fringe=True)
        assert float(rsd_lower_bound()) <= est.proportion * 2**-81

    def test_mstd_band_small(self):
        est = monte_carlo("MSTD", 30, 50_000, seed=42)
        assert 1e-4 < est.proportion < 1e-3

    def test_validation(self):
        with pytest.raises(ValueError):
            monte_carlo("MSTD", 30, 0, seed=1)
        with pytest.raises(ValueError):
            monte_carlo("RSD", 60, 10, seed=1, conditioned_on_fringe=True)
        with pytest.raises(ValueError):
            monte_carlo("sidon", 30, 10, seed=1)
