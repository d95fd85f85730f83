"""
Full-scale size, power and null-distribution checks of the simulation
designs (n = 3000). Slow: run with `pytest -m slow`.

Cells use 200 replications with the widened bands of the fast variant.
"""

from __future__ import annotations

import numpy as np
import pytest
from scipy import stats

from simple_rc.enums import Scope
from simple_rc.harness import build_sim_config, monte_carlo

pytestmark = pytest.mark.slow

WORKERS = 4
FAST_REPS = 200
FAST_BAND = 0.045


def rate(example: int, reps: int = FAST_REPS, **overrides) -> float:
    config = build_sim_config(example, reps=reps, seed=20240101, **overrides)
    summary = monte_carlo(config, workers=WORKERS)
    assert summary.failures == 0
    return summary.rejection_rate


class TestSizes:
    """Empirical sizes under the group null."""

    @pytest.mark.parametrize("theta, expected", [(0.3, 0.034), (0.5, 0.032), (0.8, 0.028)])
    def test_example1_size(self, theta: float, expected: float) -> None:
        assert abs(rate(1, m=10, k0=3, theta=theta) - expected) <= FAST_BAND

    def test_example1_inflation_with_too_many_eigenpairs(self) -> None:
        low = rate(1, m=10, k0=3, theta=0.1)
        high = rate(1, m=10, k0=5, theta=0.1)
        assert high - low >= 0.15

    def test_example2_ratio_size(self) -> None:
        assert abs(rate(2, m=20, k0=3, theta=0.5) - 0.052) <= FAST_BAND


class TestPower:
    """Empirical power under the group alternative."""

    def test_strong_alternative(self) -> None:
        assert rate(3, m=10, k0=3, delta=0.5, theta=0.4) >= 0.97

    def test_moderate_alternative(self) -> None:
        assert abs(rate(3, m=10, k0=3, delta=0.3, theta=0.8) - 0.722) <= 0.08

    def test_power_grows_with_delta(self) -> None:
        rates = [rate(3, reps=100, m=10, k0=3, delta=d, theta=0.5) for d in (0.1, 0.3, 0.5)]
        ci = 2.0 * np.sqrt(0.25 / 100)
        assert rates[0] <= rates[1] + ci
        assert rates[1] <= rates[2] + ci


class TestNullDistributions:
    """Kolmogorov-Smirnov fits of the null samples."""

    def test_group_scores_are_gumbel(self) -> None:
        config = build_sim_config(1, m=10, k0=3, theta=0.5, reps=500, seed=5)
        summary = monte_carlo(config, workers=WORKERS)
        assert summary.calibration == "gumbel"
        assert stats.kstest(summary.scores, "gumbel_r").statistic <= 0.08

    def test_pair_statistics_are_chi_square(self) -> None:
        config = build_sim_config(1, m=10, k0=3, theta=0.5, reps=500, seed=6, scope=Scope.PAIR)
        summary = monte_carlo(config, workers=WORKERS)
        sample = np.asarray(summary.statistics)
        assert abs(sample.mean() - 3.0) <= 0.3
        assert stats.kstest(sample, "chi2", args=(3,)).statistic <= 0.06
