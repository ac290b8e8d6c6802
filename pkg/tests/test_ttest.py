"""Welch's t-test from raw samples and from summary statistics."""

from __future__ import annotations

import math
import random

import pytest

from rwwfund.errors import DegenerateSample
from rwwfund.stats import t_two_sided_p, welch_t_test, welch_t_test_from_summary


def welch_oracle(a: list[float], b: list[float]) -> tuple[float, float]:
    """Hand formula for the statistic and Welch-Satterthwaite df."""
    ma, mb = sum(a) / len(a), sum(b) / len(b)
    va = sum((x - ma) ** 2 for x in a) / (len(a) - 1)
    vb = sum((x - mb) ** 2 for x in b) / (len(b) - 1)
    sa, sb = va / len(a), vb / len(b)
    t = (ma - mb) / math.sqrt(sa + sb)
    df = (sa + sb) ** 2 / (sa**2 / (len(a) - 1) + sb**2 / (len(b) - 1))
    return t, df


class TestWelchTTest:
    def test_three_point_fixture(self):
        result = welch_t_test([1, 2, 3], [2, 3, 4])
        assert result.t_stat == pytest.approx(-1.2247, abs=1e-4)
        assert result.degrees_of_freedom == pytest.approx(4.0, abs=1e-9)
        assert result.p_value == pytest.approx(0.2878, abs=1e-3)
        t, df = welch_oracle([1, 2, 3], [2, 3, 4])
        assert result.t_stat == pytest.approx(t, abs=1e-12)
        assert result.degrees_of_freedom == pytest.approx(df, abs=1e-12)
        assert result.t_stat == pytest.approx(-1.0 / math.sqrt(2.0 / 3.0), abs=1e-12)

    def test_identical_samples(self):
        result = welch_t_test([1.0, 2.0, 5.0], [1.0, 2.0, 5.0])
        assert result.t_stat == 0.0
        assert result.p_value == pytest.approx(1.0, abs=1e-12)

    def test_matches_oracle_on_random_samples(self):
        rng = random.Random(19)
        for _ in range(50):
            a = [rng.gauss(0, 1) for _ in range(rng.randint(3, 12))]
            b = [rng.gauss(0.5, 2) for _ in range(rng.randint(3, 12))]
            result = welch_t_test(a, b)
            t, df = welch_oracle(a, b)
            assert result.t_stat == pytest.approx(t, abs=1e-10)
            assert result.degrees_of_freedom == pytest.approx(df, abs=1e-10)
            assert result.p_value == pytest.approx(
                t_two_sided_p(t, df), abs=1e-12
            )
            assert 0.0 <= result.p_value <= 1.0

    def test_antisymmetry_under_sample_swap(self):
        rng = random.Random(4)
        for _ in range(20):
            a = [rng.gauss(0, 1) for _ in range(6)]
            b = [rng.gauss(1, 1.5) for _ in range(9)]
            fwd = welch_t_test(a, b)
            rev = welch_t_test(b, a)
            assert rev.t_stat == pytest.approx(-fwd.t_stat, abs=1e-12)
            assert rev.degrees_of_freedom == pytest.approx(
                fwd.degrees_of_freedom, abs=1e-12
            )
            assert rev.p_value == pytest.approx(fwd.p_value, abs=1e-12)

    def test_significance_invariant_under_common_scaling(self):
        rng = random.Random(9)
        a = [rng.gauss(0, 1) for _ in range(8)]
        b = [rng.gauss(1, 1) for _ in range(8)]
        base = welch_t_test(a, b)
        for c in (0.01, 3.5, 1000.0):
            scaled = welch_t_test([c * x for x in a], [c * x for x in b])
            assert scaled.t_stat == pytest.approx(base.t_stat, rel=1e-9)
            assert scaled.significant_at(0.05) == base.significant_at(0.05)

    def test_tiny_samples_rejected(self):
        with pytest.raises(DegenerateSample):
            welch_t_test([1.0], [1.0, 2.0])

    def test_zero_variance_pair_rejected(self):
        with pytest.raises(DegenerateSample):
            welch_t_test([2.0, 2.0, 2.0], [3.0, 3.0])

    def test_one_degenerate_side_is_fine(self):
        result = welch_t_test([2.0, 2.0, 2.0], [3.0, 4.0])
        assert math.isfinite(result.t_stat)
        assert 0.0 <= result.p_value <= 1.0


class TestWelchFromSummary:
    def test_equals_raw_sample_form(self):
        a = [1.0, 2.0, 3.0, 6.0]
        b = [2.0, 3.0, 4.0]
        raw = welch_t_test(a, b)
        ma, mb = sum(a) / 4, sum(b) / 3
        se_a = math.sqrt(sum((x - ma) ** 2 for x in a) / 3 / 4)
        se_b = math.sqrt(sum((x - mb) ** 2 for x in b) / 2 / 3)
        summary = welch_t_test_from_summary(ma, se_a, 4, mb, se_b, 3)
        assert summary.t_stat == pytest.approx(raw.t_stat, abs=1e-12)
        assert summary.degrees_of_freedom == pytest.approx(
            raw.degrees_of_freedom, abs=1e-10
        )
        assert summary.p_value == pytest.approx(raw.p_value, abs=1e-12)

    def test_group_mean_gap_fixture(self):
        # 0.01 +/- 0.01 (n=78) against 0.16 +/- 0.03 (n=49)
        result = welch_t_test_from_summary(0.01, 0.01, 78, 0.16, 0.03, 49)
        assert result.t_stat == pytest.approx(-0.15 / math.sqrt(1e-4 + 9e-4), abs=1e-9)
        assert abs(result.t_stat) == pytest.approx(4.7434, abs=1e-3)
        assert result.significant_at(0.05)

    def test_group_size_floor(self):
        with pytest.raises(DegenerateSample):
            welch_t_test_from_summary(0.1, 0.05, 1, 0.2, 0.05, 30)

    def test_zero_spread_rejected(self):
        with pytest.raises(DegenerateSample):
            welch_t_test_from_summary(0.1, 0.0, 10, 0.2, 0.0, 10)


class TestSignificance:
    def test_threshold_is_exclusive(self):
        result = welch_t_test([1, 2, 3], [2, 3, 4])
        assert not result.significant_at(result.p_value)
        assert result.significant_at(result.p_value + 1e-9)

    def test_alpha_ordering(self):
        result = welch_t_test_from_summary(0.01, 0.01, 78, 0.16, 0.03, 49)
        assert result.significant_at(0.05)
        assert result.significant_at(0.01)
        assert not result.significant_at(1e-12)
