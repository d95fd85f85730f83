"""Tests for chi-square and Gumbel special functions against scipy.stats oracles."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats

from simple_rc.distributions import (
    chi2_cdf,
    chi2_quantile,
    chi2_sf,
    gumbel_cdf,
    gumbel_quantile,
    gumbel_sf,
    ln_gamma,
)
from simple_rc.errors import PreconditionError


class TestLnGamma:

    @pytest.mark.parametrize("x, expected", [
        (1.0, 0.0),
        (0.5, math.log(math.sqrt(math.pi))),
        (5.0, math.log(24.0)),
    ])
    def test_closed_forms(self, x: float, expected: float) -> None:
        assert ln_gamma(x) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0])
    def test_domain(self, x: float) -> None:
        with pytest.raises(PreconditionError):
            ln_gamma(x)


class TestChiSquare:

    def test_quantile_closed_forms(self) -> None:
        assert chi2_quantile(0.0, 4) == 0.0
        assert chi2_quantile(0.5, 2) == pytest.approx(2 * math.log(2), rel=1e-12)
        assert chi2_quantile(0.95, 3) == pytest.approx(7.8147, abs=1e-4)

    @pytest.mark.parametrize("k", range(1, 11))
    def test_roundtrip(self, k: int) -> None:
        for x in np.linspace(0.01, 50.0, 40):
            p = chi2_cdf(x, k)
            if p < 1.0 - 1e-12:
                assert chi2_quantile(p, k) == pytest.approx(x, rel=1e-8)

    @pytest.mark.parametrize("k", [1, 3, 7])
    def test_matches_scipy(self, k: int) -> None:
        for x in [0.1, 1.0, 4.0, 12.0, 40.0]:
            assert chi2_cdf(x, k) == pytest.approx(stats.chi2.cdf(x, k), rel=1e-10)
            assert chi2_sf(x, k) == pytest.approx(stats.chi2.sf(x, k), rel=1e-10)

    def test_monotone(self) -> None:
        values = [chi2_cdf(x, 4) for x in np.linspace(0.0, 30.0, 200)]
        assert np.all(np.diff(values) >= 0)

    def test_nonpositive_argument(self) -> None:
        assert chi2_cdf(-1.0, 2) == 0.0
        assert chi2_sf(0.0, 2) == 1.0

    @pytest.mark.parametrize("p, k", [(1.0, 3), (-0.1, 3), (0.5, 0)])
    def test_bad_arguments(self, p: float, k: int) -> None:
        with pytest.raises(PreconditionError):
            chi2_quantile(p, k)


class TestGumbel:

    def test_closed_forms(self) -> None:
        assert gumbel_cdf(0.0) == pytest.approx(math.exp(-1.0), abs=1e-15)
        assert gumbel_quantile(0.95) == pytest.approx(-math.log(-math.log(0.95)), abs=1e-15)
        assert gumbel_quantile(0.95) == pytest.approx(2.9702, abs=1e-4)

    @pytest.mark.parametrize("p", [1e-6, 0.05, 0.5, 0.95, 1 - 1e-9])
    def test_roundtrip(self, p: float) -> None:
        assert gumbel_cdf(gumbel_quantile(p)) == pytest.approx(p, abs=1e-14)

    def test_matches_scipy(self) -> None:
        for x in [-2.0, 0.0, 1.5, 8.0]:
            assert gumbel_cdf(x) == pytest.approx(stats.gumbel_r.cdf(x), rel=1e-12)
            assert gumbel_sf(x) == pytest.approx(stats.gumbel_r.sf(x), rel=1e-10)

    def test_extreme_arguments(self) -> None:
        assert gumbel_cdf(-1000.0) == 0.0
        assert gumbel_sf(-1000.0) == 1.0
        assert 0.0 < gumbel_sf(40.0) < 1e-16

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_quantile_domain(self, p: float) -> None:
        with pytest.raises(PreconditionError):
            gumbel_quantile(p)
