"""Welch's unequal-variance t-test, from raw samples or summary statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import DegenerateSample
from .tdist import t_two_sided_p


@dataclass(frozen=True)
class TTestResult:
    t_stat: float
    degrees_of_freedom: float
    p_value: float

    def significant_at(self, alpha: float) -> bool:
        return self.p_value < alpha


def _mean_var(sample: Sequence[float]) -> tuple[float, float]:
    n = len(sample)
    m = sum(sample) / n
    v = sum((x - m) ** 2 for x in sample) / (n - 1)
    return m, v


def welch_t_test(sample_a: Sequence[float], sample_b: Sequence[float]) -> TTestResult:
    """Two-sided Welch test of mean difference between independent samples."""
    if len(sample_a) < 2 or len(sample_b) < 2:
        raise DegenerateSample("each sample needs at least 2 elements")
    ma, va = _mean_var(sample_a)
    mb, vb = _mean_var(sample_b)
    return _welch(ma, va, len(sample_a), mb, vb, len(sample_b))


def welch_t_test_from_summary(
    mean_a: float,
    se_a: float,
    n_a: int,
    mean_b: float,
    se_b: float,
    n_b: int,
) -> TTestResult:
    """Welch test from group means and standard errors of the mean."""
    if n_a < 2 or n_b < 2:
        raise DegenerateSample("each group needs at least 2 observations")
    return _welch(mean_a, se_a**2 * n_a, n_a, mean_b, se_b**2 * n_b, n_b)


def _welch(
    ma: float, va: float, na: int, mb: float, vb: float, nb: int
) -> TTestResult:
    sa = va / na
    sb = vb / nb
    if sa + sb == 0.0:
        raise DegenerateSample("both samples have zero variance")
    t = (ma - mb) / math.sqrt(sa + sb)
    df = (sa + sb) ** 2 / (sa**2 / (na - 1) + sb**2 / (nb - 1))
    return TTestResult(t_stat=t, degrees_of_freedom=df, p_value=t_two_sided_p(t, df))
