"""Partitioning, Student-t quantiles, and the three group t-tests."""

import math

import numpy as np
import pytest

from ineqtest import (
    B0,
    DomainError,
    InsufficientDataError,
    SMParams,
    SmallGroupWarning,
    one_sample_group_test,
    one_sample_test,
    paired_difference_test,
    partition,
    sm_sample,
    student_t_quantile,
    two_sample_group_test,
    two_sample_test,
)
from ineqtest.grouptests import GUARANTEED, OUTSIDE_GUARANTEE, group_estimates


class TestPartition:
    def test_even_split(self):
        groups = partition(np.arange(8.0) + 1, 4, warn_small=False)
        assert [len(g) for g in groups] == [2, 2, 2, 2]

    def test_floor_boundaries(self):
        groups = partition(np.arange(10.0) + 1, 4, warn_small=False)
        assert [len(g) for g in groups] == [2, 3, 2, 3]

    def test_large_even(self):
        groups = partition(np.arange(1000.0) + 1, 8, warn_small=False)
        assert all(len(g) == 125 for g in groups)

    def test_order_preserving_and_lossless(self):
        rng = np.random.default_rng(0)
        x = rng.lognormal(0, 1, 137)
        for q in (2, 3, 5, 8, 16):
            groups = partition(x, q, warn_small=False)
            assert np.array_equal(np.concatenate(groups), x)

    def test_insufficient_data(self):
        with pytest.raises(InsufficientDataError):
            partition(np.arange(7.0) + 1, 4, warn_small=False)

    def test_small_group_warning(self):
        with pytest.warns(SmallGroupWarning):
            partition(np.arange(50.0) + 1, 4)


def test_student_t_quantile_reference_values():
    assert student_t_quantile(3, 0.975) == pytest.approx(3.18245, abs=1e-5)
    assert student_t_quantile(1, 0.75) == pytest.approx(math.tan(math.pi / 4.0), abs=1e-8)
    assert student_t_quantile(9, 0.5) == pytest.approx(0.0, abs=1e-15)
    for df in (1, 2, 5, 30):
        assert student_t_quantile(df, 0.9) == pytest.approx(-student_t_quantile(df, 0.1), abs=1e-12)
    with pytest.raises(DomainError):
        student_t_quantile(0, 0.9)
    with pytest.raises(DomainError):
        student_t_quantile(3, 1.0)


class TestOneSample:
    def test_degenerate_non_rejection(self):
        out = one_sample_test([0.3, 0.3, 0.3, 0.3], 0.3)
        assert out.degenerate and not out.reject and out.p_value == 1.0

    def test_degenerate_rejection(self):
        out = one_sample_test([0.3, 0.3, 0.3, 0.3], 0.25)
        assert out.degenerate and out.reject and out.p_value == 0.0

    def test_hand_example(self):
        vals = [0.25, 0.30, 0.27, 0.26]
        out = one_sample_test(vals, 0.2, alpha=0.05)
        hand = 2.0 * (np.mean(vals) - 0.2) / np.std(vals, ddof=1)
        assert out.statistic == pytest.approx(hand, abs=1e-12)
        assert out.statistic == pytest.approx(6.481, abs=1e-3)
        assert out.df == 3
        assert out.critical_value == pytest.approx(3.18245, abs=1e-5)
        assert out.reject

    def test_one_sided(self):
        vals = [0.25, 0.30, 0.27, 0.26]
        up = one_sample_test(vals, 0.2, alpha=0.05, alternative="greater")
        down = one_sample_test(vals, 0.2, alpha=0.05, alternative="less")
        assert up.reject and not down.reject
        assert up.validity == OUTSIDE_GUARANTEE  # one-sided guarantee needs q in {2, 3}
        two = one_sample_test(vals[:2], 0.2, alpha=0.05, alternative="greater")
        assert two.validity == GUARANTEED


@pytest.mark.parametrize(
    "q,alpha,expected",
    [
        (4, 0.05, GUARANTEED),
        (20, 0.05, GUARANTEED),   # alpha below the any-q threshold
        (14, 0.10, GUARANTEED),
        (15, 0.10, OUTSIDE_GUARANTEE),
        (20, 0.20, OUTSIDE_GUARANTEE),
        (4, 0.20, OUTSIDE_GUARANTEE),
    ],
)
def test_one_sample_validity_domain(q, alpha, expected):
    vals = np.linspace(0.2, 0.3, q)
    assert one_sample_test(vals, 0.24, alpha=alpha).validity == expected


@pytest.mark.parametrize(
    "q1,q2,alpha,expected",
    [
        (4, 4, 0.05, GUARANTEED),
        (14, 14, 0.10, GUARANTEED),
        (15, 15, 0.10, OUTSIDE_GUARANTEE),
        (50, 50, 0.083, GUARANTEED),
        (50, 50, 0.0005, GUARANTEED),  # the any-size clause has no stated floor
        (14, 14, 0.0005, GUARANTEED),
        (51, 4, 0.05, OUTSIDE_GUARANTEE),
    ],
)
def test_two_sample_validity_domain(q1, q2, alpha, expected):
    gi = np.linspace(0.2, 0.3, q1)
    gy = np.linspace(0.21, 0.31, q2)
    assert two_sample_test(gi, gy, alpha=alpha).validity == expected


class TestTwoSample:
    def test_identical_groups(self):
        g = [0.3, 0.31, 0.29, 0.3]
        out = two_sample_test(g, g, d0=0.0)
        assert out.statistic == 0.0 and not out.reject

    def test_hand_example(self):
        out = two_sample_test([0.30, 0.32, 0.29, 0.31], [0.25, 0.27, 0.24, 0.26], 0.0, 0.05)
        assert out.statistic == pytest.approx(5.477, abs=1e-3)
        assert out.reject

    def test_df_rule_min_q_minus_one(self):
        rng = np.random.default_rng(1)
        for q1 in (2, 3, 7, 14, 50):
            for q2 in (2, 5, 14, 50):
                out = two_sample_test(rng.normal(size=q1), rng.normal(size=q2))
                assert out.df == min(q1, q2) - 1


class TestPaired:
    def test_fully_dependent_degenerate(self):
        g = np.array([0.3, 0.31, 0.29, 0.3])
        out = paired_difference_test(g, g, d0=0.0)
        assert out.degenerate and not out.reject

    def test_hand_example(self):
        gy = np.array([0.2, 0.25, 0.22, 0.21])
        gi = gy + np.array([0.05, 0.03, 0.06, 0.04])
        out = paired_difference_test(gi, gy, 0.0, 0.05)
        assert out.statistic == pytest.approx(6.971, abs=1e-3)
        assert out.reject

    def test_unequal_group_counts_rejected(self):
        with pytest.raises(DomainError):
            paired_difference_test([0.1, 0.2, 0.3], [0.1, 0.2])


def test_duality_reject_iff_outside_ci():
    rng = np.random.default_rng(42)
    for _ in range(300):
        q = int(rng.integers(2, 17))
        vals = rng.normal(0.3, 0.05, q)
        d0 = rng.normal(0.0, 0.1)
        alpha = float(rng.uniform(0.01, 0.10))
        out = one_sample_test(vals, d0, alpha=alpha)
        assert out.reject == (d0 < out.ci[0] or d0 > out.ci[1])
        gy = rng.normal(0.25, 0.05, q)
        out2 = two_sample_test(vals, gy, d0=d0, alpha=alpha)
        assert out2.reject == (d0 < out2.ci[0] or d0 > out2.ci[1])
        out3 = paired_difference_test(vals, gy, d0=d0, alpha=alpha)
        assert out3.reject == (d0 < out3.ci[0] or d0 > out3.ci[1])


def test_pipeline_scale_invariance():
    rng = np.random.default_rng(7)
    x = rng.lognormal(0, 1, 400)
    y = rng.lognormal(0.2, 1, 300)
    for measure in ("gini", "theil"):
        base = two_sample_group_test(x, y, measure, 4, warn_small=False)
        scaled = two_sample_group_test(37.5 * x, 37.5 * y, measure, 4, warn_small=False)
        assert scaled.reject == base.reject
        assert scaled.statistic == pytest.approx(base.statistic, rel=1e-9)


def test_pipeline_constant_sample_degenerate():
    out = one_sample_group_test(np.full(40, 5.0), "gini", 4, 0.0, warn_small=False)
    assert out.degenerate and not out.reject


def test_pipeline_golden_outcome():
    # frozen regression: fixed-seed benchmark sample, Gini, q=4
    x = sm_sample(SMParams(2.8, B0, 1.7), 1000, np.random.default_rng(20240731))
    out = one_sample_group_test(x, "gini", 4, 0.2887138061613176, warn_small=False)
    assert out.statistic == pytest.approx(0.7749502583606601, abs=1e-12)
    assert out.p_value == pytest.approx(0.4948448699155044, abs=1e-12)
    assert out.ci[0] == pytest.approx(0.25751562029374303, abs=1e-12)
    assert out.ci[1] == pytest.approx(0.33999679526614374, abs=1e-12)
    assert not out.reject and out.validity == GUARANTEED


def test_group_estimates_shape():
    x = np.arange(1.0, 101.0)
    ge = group_estimates(x, 4, "gini", warn_small=False)
    assert ge.q == 4 and ge.group_sizes == (25, 25, 25, 25)
    assert ge.estimates.shape == (4,)
