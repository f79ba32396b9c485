"""Alignment engine tests, checked against the exhaustive-path oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warpwatch import errors
from warpwatch.dtw import (
    DtwResult,
    TimeSeries,
    WarpingPath,
    brute_force_dtw,
    dtw,
    normalized_distance,
    pointwise_distance,
)


def assert_valid_path(path, m, n):
    steps = list(path)
    assert steps[0] == (0, 0)
    assert steps[-1] == (m - 1, n - 1)
    for prev, cur in zip(steps, steps[1:]):
        delta = (cur[0] - prev[0], cur[1] - prev[1])
        assert delta in ((0, 1), (1, 1), (1, 0))
    assert len(set(steps)) == len(steps)


def random_pair(rng, max_len=7):
    m = int(rng.integers(1, max_len + 1))
    n = int(rng.integers(1, max_len + 1))
    return rng.uniform(0, 10, m), rng.uniform(0, 10, n)


class TestPointwiseDistance:
    def test_plain_difference(self):
        assert pointwise_distance(3.0, 1.5) == 1.5

    def test_identity(self):
        assert pointwise_distance(2.0, 2.0) == 0.0

    def test_sign_crossing(self):
        assert pointwise_distance(-1.0, 2.0) == 3.0


class TestDtw:
    def test_identical_series_diagonal(self):
        res = dtw([0, 1, 2], [0, 1, 2])
        assert res.distance == 0.0
        assert list(res.path) == [(0, 0), (1, 1), (2, 2)]

    def test_elastic_zero_cost_match(self):
        res = dtw([0, 2], [0, 0, 2])
        assert res.distance == 0.0
        assert list(res.path) == [(0, 0), (0, 1), (1, 2)]

    def test_single_cell(self):
        res = dtw([0.0], [5.0])
        assert res.distance == 5.0
        assert list(res.path) == [(0, 0)]

    def test_accepts_time_series_objects(self):
        a = TimeSeries("a", [1.0, 2.0, 3.0])
        b = TimeSeries("b", [1.0, 3.0])
        assert dtw(a, b).distance == dtw([1, 2, 3], [1, 3]).distance

    def test_unmasked_cell_count_is_lattice_size(self):
        res = dtw([0, 1, 2], [5, 6])
        assert res.cells_evaluated == 6

    def test_empty_series_rejected(self):
        with pytest.raises(errors.EmptySeries):
            dtw([], [1.0])
        with pytest.raises(errors.EmptySeries):
            dtw([1.0], [])

    def test_non_finite_rejected(self):
        with pytest.raises(errors.NonFiniteSample):
            dtw([1.0, math.nan], [1.0])
        with pytest.raises(errors.NonFiniteSample):
            dtw([1.0], [math.inf, 0.0])

    def test_matches_oracle_on_random_pairs(self):
        rng = np.random.default_rng(1001)
        for _ in range(60):
            a, b = random_pair(rng)
            fast = dtw(a, b)
            slow = brute_force_dtw(a, b)
            assert fast.distance == pytest.approx(slow.distance, abs=1e-9)
            assert list(fast.path) == list(slow.path)
            assert_valid_path(fast.path, len(a), len(b))

    def test_self_alignment_is_free_and_diagonal(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = rng.uniform(-5, 5, int(rng.integers(1, 30)))
            res = dtw(a, a)
            assert res.distance == 0.0
            assert list(res.path) == [(k, k) for k in range(len(a))]


class TestMask:
    def test_all_ones_mask_matches_unmasked(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            a, b = random_pair(rng, max_len=9)
            free = dtw(a, b)
            masked = dtw(a, b, mask=np.ones((len(a), len(b)), dtype=np.uint8))
            assert masked.distance == free.distance
            assert list(masked.path) == list(free.path)
            assert masked.cells_evaluated <= len(a) * len(b)

    def test_masked_distance_never_below_unmasked(self):
        rng = np.random.default_rng(43)
        for _ in range(50):
            a, b = random_pair(rng, max_len=8)
            mask = (rng.uniform(size=(len(a), len(b))) < 0.6).astype(np.uint8)
            free = dtw(a, b)
            constrained = dtw(a, b, mask=mask)
            assert constrained.distance >= free.distance - 1e-12
            assert constrained.cells_evaluated <= int(mask.sum())
            if not constrained.infeasible:
                steps = list(constrained.path)
                assert all(mask[i, j] == 1 for i, j in steps)

    def test_blocked_lattice_is_infeasible(self):
        mask = np.zeros((3, 3), dtype=np.uint8)
        mask[0, 0] = 1
        mask[2, 2] = 1
        res = dtw([0, 1, 2], [0, 1, 2], mask=mask)
        assert res.infeasible
        assert res.distance == math.inf
        assert res.path is None

    def test_forbidden_start_is_infeasible(self):
        mask = np.ones((2, 2), dtype=np.uint8)
        mask[0, 0] = 0
        assert dtw([0, 1], [0, 1], mask=mask).infeasible

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(errors.MaskDimensionMismatch):
            dtw([0, 1], [0, 1], mask=np.ones((3, 2), dtype=np.uint8))

    def test_diagonal_only_mask_forces_lockstep(self):
        a = [0.0, 1.0, 4.0]
        b = [0.0, 2.0, 4.0]
        res = dtw(a, b, mask=np.eye(3, dtype=np.uint8))
        assert res.distance == pytest.approx(1.0)
        assert list(res.path) == [(0, 0), (1, 1), (2, 2)]
        assert res.cells_evaluated == 3


class TestBruteForce:
    def test_single_cell(self):
        res = brute_force_dtw([0.0], [5.0])
        assert res.distance == 5.0
        assert list(res.path) == [(0, 0)]

    def test_identical_pair(self):
        assert brute_force_dtw([0, 1], [0, 1]).distance == 0.0

    def test_size_guard(self):
        with pytest.raises(errors.InstanceTooLarge):
            brute_force_dtw(np.zeros(11), np.zeros(3))


class TestNormalizedDistance:
    def test_divides_by_path_length(self):
        path = WarpingPath(((0, 0), (1, 1), (2, 2), (3, 3), (4, 4)))
        assert normalized_distance(DtwResult(10.0, path, 25)) == 2.0

    def test_zero_preserved(self):
        res = dtw([1, 2, 3], [1, 2, 3])
        assert normalized_distance(res) == 0.0

    def test_infeasible_rejected(self):
        with pytest.raises(errors.InfeasibleResult):
            normalized_distance(DtwResult(math.inf, None, 0))


class TestWarpingPathType:
    def test_must_start_at_origin(self):
        with pytest.raises(ValueError):
            WarpingPath(((0, 1), (1, 1)))

    def test_rejects_illegal_step(self):
        with pytest.raises(ValueError):
            WarpingPath(((0, 0), (2, 1)))
        with pytest.raises(ValueError):
            WarpingPath(((0, 0), (1, 1), (1, 0)))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            WarpingPath(())


finite_samples = st.lists(
    st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=10,
)


@given(finite_samples, finite_samples)
@settings(max_examples=60, deadline=None)
def test_distance_is_symmetric(xs, ys):
    assert dtw(xs, ys).distance == pytest.approx(dtw(ys, xs).distance, abs=1e-9)


@given(finite_samples, finite_samples)
@settings(max_examples=60, deadline=None)
def test_returned_path_is_well_formed(xs, ys):
    res = dtw(xs, ys)
    assert_valid_path(res.path, len(xs), len(ys))
    assert res.distance >= 0.0
