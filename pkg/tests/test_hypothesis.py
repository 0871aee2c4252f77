"""Practical-significance designation and the consensus rule."""

import numpy as np
import pytest

from leastdiff import (
    CredibleBounds,
    Designation,
    EmptyInput,
    NullRegion,
    Scale,
    consensus,
    designate,
    is_practically_significant,
    least_difference,
)

REGION = NullRegion(-4.0, 3.0, Scale.RAW)


class TestDesignate:
    def test_zero_is_excluded_from_testing(self):
        assert designate(0.0, REGION) is Designation.NO_POSTERIOR_SIGNIFICANCE

    def test_beyond_positive_threshold(self):
        assert designate(5.0, REGION) is Designation.PRACTICALLY_SIGNIFICANT

    def test_inside_null_region(self):
        assert designate(-2.0, REGION) is Designation.NOT_PRACTICALLY_SIGNIFICANT

    def test_beyond_negative_threshold(self):
        assert designate(-4.5, REGION) is Designation.PRACTICALLY_SIGNIFICANT

    def test_threshold_ties_are_not_significant(self):
        assert designate(3.0, REGION) is Designation.NOT_PRACTICALLY_SIGNIFICANT
        assert designate(-4.0, REGION) is Designation.NOT_PRACTICALLY_SIGNIFICANT

    def test_boolean_mirror(self):
        assert is_practically_significant(5.0, REGION)
        assert not is_practically_significant(0.0, REGION)
        assert not is_practically_significant(2.0, REGION)

    def test_widening_region_never_creates_significance(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            delta = float(rng.uniform(-8, 8))
            pos = float(rng.uniform(0.5, 5))
            neg = -float(rng.uniform(0.5, 5))
            narrow = designate(delta, NullRegion(neg, pos, Scale.RAW))
            wide = designate(delta, NullRegion(neg * 2, pos * 2, Scale.RAW))
            if narrow is Designation.NOT_PRACTICALLY_SIGNIFICANT:
                assert wide is not Designation.PRACTICALLY_SIGNIFICANT

    def test_retesting_is_pure_in_the_region(self):
        # one delta value against many regions: outcomes depend only on
        # (delta, region), never on recomputation order
        regions = [NullRegion(-r, r, Scale.RAW) for r in (1.0, 2.0, 3.0)]
        first = [designate(2.5, r) for r in regions]
        second = [designate(2.5, r) for r in reversed(regions)]
        assert first == list(reversed(second))

    def test_matches_interval_disjointness(self):
        # significant exactly when the interval that produced the value
        # sits wholly outside the region on its own side
        rng = np.random.default_rng(11)
        for _ in range(300):
            lo = float(rng.uniform(-10, 8))
            hi = lo + float(rng.uniform(0.0, 6))
            bounds = CredibleBounds(lo, hi, 0.05, Scale.RAW)
            if lo <= 0.0 <= hi:
                sign_ref = 0.0
            else:
                sign_ref = 1.0 if lo > 0 else -1.0
            delta = least_difference(bounds, sign_ref)
            outcome = designate(delta, REGION)
            outside = (lo > REGION.pos_threshold) or (hi < REGION.neg_threshold)
            assert (outcome is Designation.PRACTICALLY_SIGNIFICANT) == (
                delta != 0.0 and outside)


class TestConsensus:
    PS = Designation.PRACTICALLY_SIGNIFICANT
    NOT = Designation.NOT_PRACTICALLY_SIGNIFICANT
    NONE = Designation.NO_POSTERIOR_SIGNIFICANCE

    def test_unanimous_significance(self):
        assert consensus([self.PS, self.PS])
        assert consensus([self.PS, self.PS, self.PS])

    def test_single_dissent_blocks(self):
        assert not consensus([self.PS, self.NOT])

    def test_excluded_result_blocks(self):
        assert not consensus([self.NONE, self.PS])

    def test_requires_at_least_two_threshold_sets(self):
        with pytest.raises(EmptyInput):
            consensus([self.PS])
        with pytest.raises(EmptyInput):
            consensus([])
