"""Tests for the exact solver: helpers, golden instances, oracle agreement."""

import numpy as np
import numpy.testing as npt
import pytest

from cappedproj import (
    DegeneratePartitionError,
    InfeasibleError,
    InvalidInputError,
    Partition,
    ProjectionInput,
    boundary_case_holds,
    default_eps,
    enumerate_oracle,
    gamma_for_partition,
    partition_is_optimal,
    project_capped_box,
    project_capped_simplex,
    sort_with_permutation,
)
from cappedproj.projection import HAVE_NUMBA, _scan_numba, _scan_numpy


class TestProjectionInput:
    def test_accepts_lists_and_coerces(self):
        inp = ProjectionInput([0.5, 0.25], 1.0)
        assert inp.y.dtype == np.float64
        assert inp.dim == 2
        assert inp.t == 1.0

    def test_rejects_bad_vectors(self):
        with pytest.raises(InvalidInputError):
            ProjectionInput(np.array([1.0, np.inf]), 1.0)
        with pytest.raises(InvalidInputError):
            ProjectionInput(np.ones((2, 3)), 1.0)
        with pytest.raises(InvalidInputError):
            ProjectionInput(np.array([]), 0.0)

    def test_rejects_bad_cap_and_target(self):
        with pytest.raises(InvalidInputError):
            ProjectionInput([0.0, 0.0], 1.0, t=0.0)
        with pytest.raises(InvalidInputError):
            ProjectionInput([0.0, 0.0], 1.0, t=-2.0)
        with pytest.raises(InvalidInputError):
            ProjectionInput([0.0, 0.0], np.nan)

    def test_infeasible_targets(self):
        with pytest.raises(InfeasibleError):
            ProjectionInput([0.0, 0.0], -1.0)
        with pytest.raises(InfeasibleError):
            ProjectionInput([0.0, 0.0], 2.5)
        with pytest.raises(InfeasibleError):
            ProjectionInput([0.0, 0.0], 1.2, t=0.5)

    def test_feasible_boundaries_accepted(self):
        ProjectionInput([0.0, 0.0], 0.0)
        ProjectionInput([0.0, 0.0], 2.0)
        ProjectionInput([0.0, 0.0], 1.0, t=0.5)


class TestSortWithPermutation:
    def test_sorted_order_and_inverse(self):
        y = np.array([0.3, -0.2, 1.5])
        inst = sort_with_permutation(y)
        npt.assert_array_equal(inst.y_sorted, np.sort(y))
        npt.assert_array_equal(inst.y_sorted, y[inst.perm])

    def test_prefix_sums(self):
        y = np.array([2.0, -1.0, 0.5])
        inst = sort_with_permutation(y)
        npt.assert_allclose(inst.prefix, [0.0, -1.0, -0.5, 1.5])

    def test_stable_on_ties(self):
        inst = sort_with_permutation(np.array([1.0, 0.0, 1.0, 0.0]))
        npt.assert_array_equal(inst.perm, [1, 3, 0, 2])

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            sort_with_permutation(np.array([0.0, np.nan]))


class TestGammaForPartition:
    def test_three_point_shift(self):
        inst = sort_with_permutation(np.array([-0.2, 0.3, 1.5]))
        g = gamma_for_partition(inst, Partition(0, 2), 2.0)
        assert abs(g - 0.45) < 1e-15

    def test_all_interior_is_mean_shift(self):
        y = np.array([0.3, -0.1, 0.4, 0.2])
        inst = sort_with_permutation(y)
        g = gamma_for_partition(inst, Partition(0, 4), 1.0)
        npt.assert_allclose(g, (1.0 - y.sum()) / 4.0, atol=1e-15)

    def test_single_interior_coordinate(self):
        inst = sort_with_permutation(np.array([-2.0, 0.5, 3.0]))
        g = gamma_for_partition(inst, Partition(1, 2), 1.5)
        assert g == 0.0

    def test_empty_interior_rejected(self):
        inst = sort_with_permutation(np.array([0.1, 0.9]))
        with pytest.raises(DegeneratePartitionError):
            gamma_for_partition(inst, Partition(1, 1), 1.0)


class TestPartitionIsOptimal:
    def test_accepts_the_true_split(self):
        inst = sort_with_permutation(np.array([-2.0, 0.5, 3.0]))
        assert partition_is_optimal(inst, Partition(1, 2), 0.0, 1e-9)

    def test_rejects_wrong_shift(self):
        inst = sort_with_permutation(np.array([-2.0, 0.5, 3.0]))
        assert not partition_is_optimal(inst, Partition(1, 2), 0.7, 1e-9)
        assert not partition_is_optimal(inst, Partition(1, 2), -0.6, 1e-9)

    def test_rejects_wrong_split(self):
        inst = sort_with_permutation(np.array([-2.0, 0.5, 3.0]))
        g = gamma_for_partition(inst, Partition(0, 2), 1.5)
        assert not partition_is_optimal(inst, Partition(0, 2), g, 1e-9)

    def test_virtual_neighbors_are_skipped(self):
        # a = 0 has no zero block and b = D has no one block; the tests
        # against those neighbors must not fire
        inst = sort_with_permutation(np.array([0.1, 0.2]))
        assert partition_is_optimal(inst, Partition(0, 2), 0.35, 1e-9)

    def test_tolerance_widens_acceptance(self):
        inst = sort_with_permutation(np.array([-2.0, 0.5, 3.0]))
        assert not partition_is_optimal(inst, Partition(1, 2), 0.51, 1e-9)
        assert partition_is_optimal(inst, Partition(1, 2), 0.51, 0.1)


class TestBoundaryCaseHolds:
    def test_wide_gap_with_matching_sum(self):
        inst = sort_with_permutation(np.array([0.0, 5.0]))
        assert boundary_case_holds(inst, 1, 1.0, 1e-9)

    def test_sum_mismatch(self):
        inst = sort_with_permutation(np.array([0.0, 5.0]))
        assert not boundary_case_holds(inst, 1, 1.5, 1e-9)

    def test_narrow_gap(self):
        inst = sort_with_permutation(np.array([0.0, 0.8]))
        assert not boundary_case_holds(inst, 1, 1.0, 1e-9)

    def test_ends_have_no_gap_requirement(self):
        inst = sort_with_permutation(np.array([0.3, -0.2]))
        assert boundary_case_holds(inst, 0, 2.0, 1e-9)
        assert boundary_case_holds(inst, 2, 0.0, 1e-9)


class TestProjectCappedSimplex:
    def test_three_point_golden(self):
        res = project_capped_simplex(ProjectionInput(np.array([0.3, -0.2, 1.5]), 2.0))
        npt.assert_array_equal(res.x, [0.75, 0.25, 1.0])
        assert abs(res.gamma - 0.45) < 1e-15
        assert (res.partition.a, res.partition.b) == (0, 2)

    def test_sum_zero_is_exactly_zero(self):
        res = project_capped_simplex(ProjectionInput(np.array([0.4, -0.7, 0.2]), 0.0))
        npt.assert_array_equal(res.x, np.zeros(3))

    def test_sum_d_is_exactly_one(self):
        res = project_capped_simplex(ProjectionInput(np.array([0.4, -0.7, 0.2]), 3.0))
        npt.assert_array_equal(res.x, np.ones(3))

    def test_interior_pair(self):
        res = project_capped_simplex(ProjectionInput(np.array([0.1, 0.2]), 1.0))
        npt.assert_allclose(res.x, [0.45, 0.55], atol=1e-15)
        assert abs(res.gamma - 0.35) < 1e-15

    def test_gap_instance_uses_the_pinned_branch(self):
        res = project_capped_simplex(ProjectionInput(np.array([0.0, 5.0]), 1.0))
        npt.assert_array_equal(res.x, [0.0, 1.0])
        assert res.partition.a == res.partition.b == 1

    def test_result_in_original_order(self):
        y = np.array([1.5, 0.3, -0.2])
        res = project_capped_simplex(ProjectionInput(y, 2.0))
        npt.assert_array_equal(res.x, [1.0, 0.75, 0.25])

    def test_matches_oracle_on_random_instances(self):
        rng = np.random.default_rng(3)
        for _ in range(400):
            d = int(rng.integers(1, 9))
            y = rng.normal(size=d) * float(rng.choice([0.1, 1.0, 10.0]))
            s = float(rng.uniform(0.0, d))
            res = project_capped_simplex(ProjectionInput(y, s))
            ref = enumerate_oracle(y, s)
            assert np.max(np.abs(res.x - ref)) <= 1e-9, (y, s)
            assert not res.fallback

    def test_integer_targets_against_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            d = int(rng.integers(1, 9))
            y = rng.uniform(-0.5, 0.5, size=d)
            s = float(rng.integers(0, d + 1))
            res = project_capped_simplex(ProjectionInput(y, s))
            ref = enumerate_oracle(y, s)
            assert np.max(np.abs(res.x - ref)) <= 1e-9

    def test_sum_constraint_tight_at_scale(self):
        inp = ProjectionInput(np.random.default_rng(5).uniform(-0.5, 0.5, 50_000), 21_111.0)
        res = project_capped_simplex(inp)
        assert abs(res.x.sum() - inp.s) <= 1e-8

    def test_reported_partition_matches_x(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            d = int(rng.integers(2, 30))
            y = rng.normal(size=d)
            s = float(rng.uniform(0.0, d))
            res = project_capped_simplex(ProjectionInput(y, s))
            xs = res.x[res.perm]
            a, b = res.partition.a, res.partition.b
            npt.assert_array_equal(xs[:a], np.zeros(a))
            npt.assert_array_equal(xs[b:], np.ones(d - b))
            if b > a:
                inner = xs[a:b]
                assert inner.min() >= -1e-9 and inner.max() <= 1.0 + 1e-9

    def test_wide_eps_still_returns_feasible_point(self):
        y = np.array([0.3, -0.2, 1.5])
        res = project_capped_simplex(ProjectionInput(y, 2.0), eps=1e-3)
        assert abs(res.x.sum() - 2.0) <= 1e-12

    def test_cap_must_be_one(self):
        with pytest.raises(InvalidInputError):
            project_capped_simplex(ProjectionInput([0.1, 0.2], 0.5, t=2.0))

    def test_single_coordinate(self):
        res = project_capped_simplex(ProjectionInput(np.array([0.7]), 0.25))
        npt.assert_allclose(res.x, [0.25], atol=1e-15)


@pytest.mark.skipif(not HAVE_NUMBA, reason="compiled kernel unavailable")
class TestScanParity:
    """The compiled and the vectorized scans must agree bit for bit."""

    def test_identical_results_on_random_instances(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            d = int(rng.integers(1, 40))
            y = np.sort(rng.normal(size=d))
            prefix = np.zeros(d + 1)
            prefix[1:] = np.cumsum(y)
            s = float(rng.uniform(0.0, d))
            eps = 1e-9 * max(1.0, float(np.max(np.abs(y))))
            got = _scan_numba(y, prefix, s, eps)
            want = _scan_numpy(y, prefix, s, eps)
            assert (int(got[0]), int(got[1])) == (want[0], want[1])
            assert got[2] == want[2] and bool(got[3]) == want[3]

    def test_identical_on_tie_instances(self):
        cases = [
            (np.array([0.0, 5.0]), 1.0),
            (np.array([0.0, 0.5, 5.0]), 1.5),
            (np.array([0.25, 0.25, 0.25, 0.25]), 2.0),
            (np.array([1.0, 1.0, 1.0]), 0.0),
        ]
        for y, s in cases:
            y = np.sort(y)
            prefix = np.zeros(y.size + 1)
            prefix[1:] = np.cumsum(y)
            got = _scan_numba(y, prefix, s, 1e-9)
            want = _scan_numpy(y, prefix, s, 1e-9)
            assert (int(got[0]), int(got[1]), got[2], bool(got[3])) == want


class TestProjectCappedBox:
    def test_half_cap_pair(self):
        res = project_capped_box(ProjectionInput(np.array([0.6, 0.6]), 1.0, t=0.5))
        npt.assert_allclose(res.x, [0.5, 0.5], atol=1e-15)

    def test_unit_cap_delegates(self):
        y = np.array([0.3, -0.2, 1.5])
        a = project_capped_box(ProjectionInput(y, 2.0))
        b = project_capped_simplex(ProjectionInput(y, 2.0))
        npt.assert_array_equal(a.x, b.x)

    def test_matches_rescaled_oracle(self):
        rng = np.random.default_rng(8)
        for t in (0.5, 2.0, 7.3):
            for _ in range(60):
                d = int(rng.integers(1, 8))
                y = rng.normal(size=d) * 3.0
                s = float(rng.uniform(0.0, t * d))
                res = project_capped_box(ProjectionInput(y, s, t=t))
                ref = t * enumerate_oracle(y / t, min(max(s / t, 0.0), float(d)))
                assert np.max(np.abs(res.x - ref)) <= 1e-9

    def test_gamma_scales_with_cap(self):
        y = np.array([0.1, 0.2])
        unit = project_capped_box(ProjectionInput(y / 2.0, 0.5))
        doubled = project_capped_box(ProjectionInput(y, 1.0, t=2.0))
        npt.assert_allclose(doubled.x, 2.0 * unit.x, atol=1e-15)
        npt.assert_allclose(doubled.gamma, 2.0 * unit.gamma, atol=1e-15)

    def test_full_box_target(self):
        res = project_capped_box(ProjectionInput(np.array([0.0, 9.0, -3.0]), 3 * 7.3, t=7.3))
        npt.assert_allclose(res.x, [7.3, 7.3, 7.3], atol=1e-12)


class TestDefaultEps:
    def test_scales_with_magnitude(self):
        assert default_eps(np.array([0.1, -0.2])) == 1e-9
        assert default_eps(np.array([100.0, -3.0])) == 1e-9 * 100.0
