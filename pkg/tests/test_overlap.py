import math

import numpy as np
import pytest

from tsfsb import (
    AlignmentError,
    DomainError,
    FeatureMatrix,
    cross_correlation,
    least_matched,
    overlap_S,
    pairwise_overlap,
    spearman,
)
from tsfsb.overlap import OverlapResult, rank_transform

from _oracles import ranks_average, spearman_closed_form, spearman_rank_pearson


def _matrix(values, set_id="m", names=None):
    values = np.asarray(values, dtype=np.float64)
    n, p = values.shape
    return FeatureMatrix(
        set_id=set_id,
        series_ids=[f"s{i}" for i in range(n)],
        feature_names=names or [f"{set_id}_f{j}" for j in range(p)],
        values=values,
        normalized=True,
    )


class TestRankTransform:
    def test_no_ties(self):
        assert np.array_equal(rank_transform(np.array([30.0, 10, 20])),
                              [3.0, 1.0, 2.0])

    def test_ties_share_average(self):
        assert np.array_equal(rank_transform(np.array([1.0, 1.0, 2.0])),
                              [1.5, 1.5, 3.0])

    def test_matches_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            x = rng.integers(0, 6, size=rng.integers(3, 40)).astype(float)
            assert np.array_equal(rank_transform(x), ranks_average(x))


class TestSpearman:
    def test_hand_example(self):
        assert spearman([1.0, 2, 3], [3.0, 1, 2]) == -0.5

    def test_tied_example(self):
        # ranks [1.5, 1.5, 3] vs [1, 2, 3] -> 1.5 / sqrt(3)
        v = spearman([1.0, 1, 2], [1.0, 2, 3])
        assert v == pytest.approx(1.5 / math.sqrt(3), abs=1e-12)

    def test_monotone_transform_gives_exact_one(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal(50)
        assert spearman(x, np.exp(x)) == 1.0
        assert spearman(x, x ** 3) == 1.0
        assert spearman(x, -2 * x) == -1.0

    def test_constant_is_missing(self):
        assert math.isnan(spearman([1.0, 1, 1], [1.0, 2, 3]))

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            spearman([1.0, 2], [1.0, 2, 3])

    def test_too_short(self):
        with pytest.raises(DomainError):
            spearman([1.0, 2], [2.0, 1])

    def test_matches_rank_pearson_oracle_with_ties(self):
        rng = np.random.default_rng(2)
        for _ in range(300):
            n = int(rng.integers(3, 51))
            x = rng.integers(0, max(2, n // 2), size=n).astype(float)
            y = rng.integers(0, max(2, n // 2), size=n).astype(float)
            got = spearman(x, y)
            want = spearman_rank_pearson(x, y)
            if math.isnan(want):
                assert math.isnan(got)
            else:
                assert got == pytest.approx(want, abs=1e-12)

    def test_matches_closed_form_without_ties(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            n = int(rng.integers(3, 51))
            x = rng.permutation(n).astype(float)
            y = rng.permutation(n).astype(float)
            assert spearman(x, y) == pytest.approx(
                spearman_closed_form(x, y), abs=1e-12
            )


class TestCrossCorrelation:
    def test_self_grid_diagonal_exact(self):
        rng = np.random.default_rng(4)
        m = _matrix(rng.standard_normal((20, 6)))
        grid = cross_correlation(m, m)
        assert np.all(np.diag(grid) == 1.0)

    def test_grid_shape(self):
        rng = np.random.default_rng(5)
        t = _matrix(rng.standard_normal((10, 3)), set_id="t")
        b = _matrix(rng.standard_normal((10, 7)), set_id="b")
        assert cross_correlation(t, b).shape == (3, 7)

    def test_independent_noise_mostly_uncorrelated(self):
        # permutation-null at n = 895: sd ~ 1/sqrt(894) ~ 0.033; 0.12 is a
        # 3.6 sigma bound, so exceedances should be rare
        rng = np.random.default_rng(6)
        t = _matrix(rng.standard_normal((895, 10)), set_id="t")
        b = _matrix(rng.standard_normal((895, 10)), set_id="b")
        grid = cross_correlation(t, b)
        assert (grid < 0.12).mean() > 0.99
        assert grid.max() < 0.2

    def test_constant_column_recorded_zero_with_warning(self):
        rng = np.random.default_rng(7)
        values = rng.standard_normal((12, 2))
        values[:, 1] = 4.0
        t = _matrix(values, set_id="t")
        b = _matrix(rng.standard_normal((12, 3)), set_id="b")
        with pytest.warns(UserWarning):
            grid = cross_correlation(t, b)
        assert np.all(grid[1] == 0.0)

    def test_misalignment_rejected(self):
        rng = np.random.default_rng(8)
        t = _matrix(rng.standard_normal((5, 2)), set_id="t")
        b = FeatureMatrix(
            set_id="b",
            series_ids=["x0", "x1", "x2", "x3", "x4"],
            feature_names=["g0"],
            values=rng.standard_normal((5, 1)),
            normalized=True,
        )
        with pytest.raises(AlignmentError):
            cross_correlation(t, b)

    def test_thread_count_does_not_change_grid(self):
        rng = np.random.default_rng(9)
        t = _matrix(rng.standard_normal((30, 300)), set_id="t")
        b = _matrix(rng.standard_normal((30, 40)), set_id="b")
        g1 = cross_correlation(t, b, threads=1)
        g4 = cross_correlation(t, b, threads=4)
        assert np.array_equal(g1, g4)


class TestOverlapS:
    def test_subset_gives_exact_one(self):
        rng = np.random.default_rng(10)
        b_values = rng.standard_normal((25, 8))
        b = _matrix(b_values, set_id="b")
        t = _matrix(b_values[:, 2:5], set_id="t")
        assert overlap_S(t, b).S == 1.0

    def test_self_overlap_exact_one(self):
        rng = np.random.default_rng(11)
        m = _matrix(rng.standard_normal((40, 12)))
        assert overlap_S(m, m).S == 1.0

    def test_mean_arithmetic(self):
        r = OverlapResult(
            test_set="t", benchmark_set="b", feature_names=["a", "b"],
            rho_max=np.array([1.0, 0.5]), S=0.75,
        )
        assert r.S == 0.75
        with pytest.raises(DomainError):
            OverlapResult(
                test_set="t", benchmark_set="b", feature_names=["a", "b"],
                rho_max=np.array([1.0, 0.5]), S=0.8,
            )

    def test_asymmetry_preserved(self):
        rng = np.random.default_rng(12)
        shared = rng.standard_normal((60, 2))
        extra = rng.standard_normal((60, 6))
        t = _matrix(shared, set_id="t")
        b = _matrix(np.column_stack([shared, extra]), set_id="b")
        s_tb = overlap_S(t, b).S
        s_bt = overlap_S(b, t).S
        assert s_tb == 1.0
        assert s_bt < s_tb

    def test_benchmark_monotonicity_exact(self):
        rng = np.random.default_rng(13)
        t = _matrix(rng.standard_normal((40, 5)), set_id="t")
        b_small = rng.standard_normal((40, 4))
        extra = rng.standard_normal((40, 3))
        s_small = overlap_S(t, _matrix(b_small, set_id="b"))
        s_big = overlap_S(
            t, _matrix(np.column_stack([b_small, extra]), set_id="b"))
        assert np.all(s_big.rho_max >= s_small.rho_max)
        assert s_big.S >= s_small.S

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(14)
        t_values = rng.standard_normal((30, 4))
        b_values = rng.standard_normal((30, 5))
        t = _matrix(t_values, set_id="t")
        b = _matrix(b_values, set_id="b")
        base = overlap_S(t, b)
        warped_t = t_values.copy()
        warped_t[:, 0] = np.exp(warped_t[:, 0])
        warped_t[:, 1] = warped_t[:, 1] ** 3
        warped_b = b_values.copy()
        warped_b[:, 2] = np.arctan(warped_b[:, 2])
        warped = overlap_S(_matrix(warped_t, set_id="t"),
                           _matrix(warped_b, set_id="b"))
        assert np.abs(warped.rho_max - base.rho_max).max() <= 1e-12

    def test_series_permutation_invariance(self):
        rng = np.random.default_rng(15)
        t_values = rng.standard_normal((25, 3))
        b_values = rng.standard_normal((25, 4))
        perm = rng.permutation(25)
        a = overlap_S(_matrix(t_values, "t"), _matrix(b_values, "b"))
        ids = [f"s{i}" for i in range(25)]
        permuted_ids = [ids[i] for i in perm]
        tp = FeatureMatrix("t", permuted_ids, [f"t_f{j}" for j in range(3)],
                           t_values[perm], normalized=True)
        bp = FeatureMatrix("b", permuted_ids, [f"b_f{j}" for j in range(4)],
                           b_values[perm], normalized=True)
        b2 = overlap_S(tp, bp)
        assert np.array_equal(a.rho_max, b2.rho_max)


class TestPairwise:
    def test_duplicated_set(self):
        rng = np.random.default_rng(16)
        values = rng.standard_normal((20, 4))
        a = _matrix(values, set_id="a")
        b = FeatureMatrix("b", a.series_ids,
                          [f"b_f{j}" for j in range(4)], values,
                          normalized=True)
        om = pairwise_overlap([a, b])
        assert np.all(om.S_values == 1.0)

    def test_three_sets_shape_and_diagonal(self):
        rng = np.random.default_rng(17)
        mats = [
            _matrix(rng.standard_normal((30, 3 + k)), set_id=f"m{k}")
            for k in range(3)
        ]
        om = pairwise_overlap(mats)
        assert om.S_values.shape == (3, 3)
        assert np.all(np.diag(om.S_values) == 1.0)

    def test_orientation_benchmark_rows(self):
        rng = np.random.default_rng(18)
        shared = rng.standard_normal((50, 2))
        extra = rng.standard_normal((50, 8))
        small = _matrix(shared, set_id="small")
        big = _matrix(np.column_stack([shared, extra]), set_id="big")
        om = pairwise_overlap([small, big])
        i_small, i_big = om.set_ids.index("small"), om.set_ids.index("big")
        # S(small | big) = 1: benchmark 'big' row, test 'small' column
        assert om.S_values[i_big, i_small] == 1.0
        assert om.S_values[i_small, i_big] < 1.0


class TestLeastMatched:
    def test_subset_has_none(self):
        rng = np.random.default_rng(19)
        b_values = rng.standard_normal((25, 6))
        b = _matrix(b_values, set_id="b")
        t = _matrix(b_values[:, :2], set_id="t")
        assert least_matched(t, b) == []

    def test_vacuous_cutoff_lists_all_ascending(self):
        rng = np.random.default_rng(20)
        t = _matrix(rng.standard_normal((40, 5)), set_id="t")
        b = _matrix(rng.standard_normal((40, 5)), set_id="b")
        out = least_matched(t, b, cutoff=1.01)
        assert len(out) == 5
        values = [v for _, v in out]
        assert values == sorted(values)

    def test_strictly_below(self):
        rng = np.random.default_rng(21)
        t = _matrix(rng.standard_normal((40, 3)), set_id="t")
        b = _matrix(rng.standard_normal((40, 3)), set_id="b")
        rho = overlap_S(t, b).rho_max
        cutoff = float(rho.max())
        out = least_matched(t, b, cutoff=cutoff)
        assert all(v < cutoff for _, v in out)
        assert len(out) == int((rho < cutoff).sum())
