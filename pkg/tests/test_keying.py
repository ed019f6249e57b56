import math

import pytest

from dafbe.errors import FactorError
from dafbe.keying import ValueKeySet, redundancy


class TestClustering:
    def test_exact_duplicates_collapse(self):
        ks = ValueKeySet.from_values([3.0, 1.0, 3.0, 1.0, 2.0])
        assert ks.reps == (1.0, 2.0, 3.0)

    def test_near_duplicates_share_representative(self):
        ks = ValueKeySet.from_values([1.0, 1.0 + 1e-12, 2.0], eps=1e-10)
        assert ks.reps == (1.0, 2.0)
        assert ks.key(1.0 + 1e-12) == 1.0

    def test_representative_is_smallest_member(self):
        ks = ValueKeySet.from_values([5.0 + 4e-11, 5.0], eps=1e-10)
        assert ks.reps == (5.0,)

    def test_gap_boundary(self):
        # exactly eps apart stays in one cluster; strictly more splits
        assert len(ValueKeySet.from_values([0.0, 1e-10], eps=1e-10)) == 1
        assert len(ValueKeySet.from_values([0.0, 1.1e-10], eps=1e-10)) == 2

    def test_chain_anchors_to_representative(self):
        # the scan measures gaps from the cluster head, so a drifting chain
        # splits once its members leave the head's eps window
        ks = ValueKeySet.from_values([0.0, 0.6e-10, 1.2e-10], eps=1e-10)
        assert ks.reps == (0.0, 1.2e-10)

    def test_infinity_own_key(self):
        ks = ValueKeySet.from_values([1.0, math.inf, 1.0])
        assert ks.has_infinity and len(ks) == 2
        assert ks.key(math.inf) == math.inf

    def test_iteration_order(self):
        ks = ValueKeySet.from_values([math.inf, 2.0, 1.0])
        assert list(ks) == [1.0, 2.0, math.inf]


class TestKeyLookup:
    def test_tie_prefers_lower(self):
        ks = ValueKeySet(eps=1.0, reps=(0.0, 1.5))
        assert ks.key(1.0) == 0.0  # within eps of both, lower wins

    def test_out_of_range_raises(self):
        ks = ValueKeySet.from_values([1.0])
        with pytest.raises(FactorError):
            ks.key(2.0)

    def test_infinity_without_member(self):
        ks = ValueKeySet.from_values([1.0])
        with pytest.raises(FactorError):
            ks.key(math.inf)


class TestValidation:
    def test_nan_rejected(self):
        with pytest.raises(FactorError):
            ValueKeySet.from_values([math.nan])
        with pytest.raises(FactorError):
            ValueKeySet.from_values([1.0]).key(math.nan)

    def test_negative_infinity_rejected(self):
        with pytest.raises(FactorError):
            ValueKeySet.from_values([-math.inf])

    def test_bad_eps(self):
        for eps in (-1.0, math.inf, math.nan):
            with pytest.raises(FactorError):
                ValueKeySet(eps=eps)


class TestRedundancy:
    def test_empty(self):
        assert redundancy([]) == 0.0

    def test_all_distinct(self):
        assert redundancy([1.0, 2.0, 3.0]) == 0.0

    def test_constant(self):
        assert redundancy([4.0] * 10) == 1.0 - 1 / 10

    def test_with_infinities(self):
        assert redundancy([math.inf, math.inf, 1.0, 1.0]) == 0.5
