"""Tests for coupling, statistics, calibration and the pair / group test drivers."""

from __future__ import annotations

import json
import math
from collections import Counter

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import stats

from simple_rc.covariance import CovarianceEstimate, PluginSource, sigma_for
from simple_rc.enums import Provenance, Scope, Variant, degrees_of_freedom
from simple_rc.errors import PreconditionError
from simple_rc.inference import (
    CouplingPlan,
    estimation_error_bounds,
    group_critical_value,
    group_pvalue,
    group_statistic,
    group_statistic_detail,
    gumbel_centering,
    max_chi2_critical_value,
    max_chi2_pvalue,
    pair_critical_value,
    pair_pvalue,
    pair_statistic,
    random_coupling,
    run_group_test,
    run_pair_test,
    subsample_group,
)
from simple_rc.spectral import Spectrum, eigendecompose, residual_matrix


def scalar_sigma(i: int, j: int, value: float) -> CovarianceEstimate:
    return CovarianceEstimate(np.array([[value]]), Provenance.PLUGIN, (i, j), 1, Variant.T)


class TestRandomCoupling:
    """Tests for the random pairing of a group."""

    def test_two_nodes(self) -> None:
        plan = random_coupling([7, 3], seed=0)
        assert plan.pairs == ((3, 7),)
        assert plan.dropped_node is None

    def test_odd_group_drops_one(self) -> None:
        plan = random_coupling(range(5), seed=4)
        assert len(plan.pairs) == 2
        assert plan.dropped_node is not None
        assert sorted(plan.nodes) == [0, 1, 2, 3, 4]
        assert plan.effective_size == 4

    def test_deterministic(self) -> None:
        assert random_coupling(range(10), 9) == random_coupling(list(range(10))[::-1], 9)

    def test_input_order_irrelevant(self) -> None:
        assert random_coupling([5, 1, 9, 2], 3).pairs == random_coupling([1, 2, 5, 9], 3).pairs

    @pytest.mark.parametrize("group", [[1], [1, 1, 2]])
    def test_bad_groups(self, group) -> None:
        with pytest.raises(PreconditionError):
            random_coupling(group, 0)

    @pytest.mark.parametrize("size, matchings", [(4, 3), (6, 15)])
    def test_uniform_over_perfect_matchings(self, size: int, matchings: int) -> None:
        seeds = 30_000
        counts = Counter(frozenset(random_coupling(range(size), seed).pairs) for seed in range(seeds))
        assert len(counts) == matchings
        observed = np.array(list(counts.values()))
        share = 1 / matchings
        assert np.all(np.abs(observed / seeds - share) <= 4.5 * math.sqrt(share * (1 - share) / seeds))
        assert stats.chisquare(observed).pvalue > 1e-3

    def test_dropped_node_uniform(self) -> None:
        seeds = 30_000
        counts = Counter(random_coupling(range(5), seed).dropped_node for seed in range(seeds))
        assert sorted(counts) == [0, 1, 2, 3, 4]
        assert stats.chisquare(np.array(list(counts.values()))).pvalue > 1e-3

    def test_shifted(self) -> None:
        plan = CouplingPlan(pairs=((0, 2),), seed=1, dropped_node=1)
        moved = plan.shifted(1)
        assert moved.pairs == ((1, 3),)
        assert moved.dropped_node == 2

    def test_subsample(self) -> None:
        picked = subsample_group(range(20), 6, seed=2)
        assert len(picked) == 6
        assert picked == sorted(set(picked))
        assert picked == subsample_group(range(20), 6, seed=2)
        with pytest.raises(PreconditionError):
            subsample_group(range(4), 5, seed=0)


class TestStatistics:
    """Tests for the pair and group quadratic forms."""

    def test_same_node_is_zero(self) -> None:
        spec = Spectrum(np.array([2.0]), np.array([[0.6], [0.8]]))
        assert pair_statistic(spec, None, 1, 1, 1) == 0.0

    def test_scalar_reduction(self) -> None:
        spec = Spectrum(np.array([2.0]), np.array([[0.6], [0.8]]))
        value = pair_statistic(spec, scalar_sigma(0, 1, 0.01), 0, 1, 1)
        assert value == pytest.approx((0.6 - 0.8) ** 2 / 0.01)

    def test_mismatched_covariance(self) -> None:
        spec = Spectrum(np.array([2.0]), np.array([[0.6], [0.8], [0.0]]))
        with pytest.raises(PreconditionError, match="does not match"):
            pair_statistic(spec, scalar_sigma(0, 2, 0.01), 0, 1, 1)

    def test_group_is_maximum(self) -> None:
        V = np.array([[0.0], [1.0], [0.0], [1.0], [0.0], [1.0]]) / np.sqrt(3)
        spec = Spectrum(np.array([3.0]), V)
        plan = CouplingPlan(pairs=((0, 1), (2, 3), (4, 5)), seed=0)
        x2 = 1.0 / 3.0
        covariances = [scalar_sigma(a, b, x2 / target) for (a, b), target in zip(plan.pairs, [2.0, 7.5, 3.1])]
        assert group_statistic(spec, covariances, plan, 1) == pytest.approx(7.5)
        single = CouplingPlan(pairs=((0, 1),), seed=0)
        assert group_statistic(spec, covariances[:1], single, 1) == pytest.approx(2.0)

    @pytest.mark.parametrize("variant", [Variant.T, Variant.T_RATIO])
    def test_sign_flip_invariance(self, sampled_example1, variant) -> None:
        X, _, group = sampled_example1
        spec = eigendecompose(X)
        k0 = 3
        residual = residual_matrix(X, spec, k0)
        flipped = spec.with_flipped_signs([0, 2])
        i, j = group[0], group[1]

        base = pair_statistic(spec, sigma_for(PluginSource(residual, spec), i, j, k0, variant), i, j, k0, variant)
        other = pair_statistic(
            flipped, sigma_for(PluginSource(residual, flipped), i, j, k0, variant), i, j, k0, variant
        )
        assert other == pytest.approx(base, rel=1e-9)

    @pytest.mark.parametrize("variant", [Variant.T, Variant.T_RATIO])
    def test_group_sign_flip_invariance(self, sampled_example1, variant) -> None:
        X, _, group = sampled_example1
        spec = eigendecompose(X)
        k0 = 3
        residual = residual_matrix(X, spec, k0)
        plan = random_coupling(group, seed=7)

        results = []
        for flips in ([], [0], [1, 2], [0, 1, 2]):
            flipped = spec.with_flipped_signs(flips)
            source = PluginSource(residual, flipped)
            covariances = [sigma_for(source, a, b, k0, variant) for a, b in plan.pairs]
            results.append(group_statistic_detail(flipped, covariances, plan, k0, variant))

        base_max, base_values, _ = results[0]
        for value, values, _ in results[1:]:
            assert value == pytest.approx(base_max, rel=1e-9)
            assert_allclose(values, base_values, rtol=1e-9, atol=1e-12)


class TestCalibration:
    """Tests for centering constants, p-values and critical values."""

    @pytest.mark.parametrize("m", [6, 10, 40])
    def test_centering_two_dimensions(self, m: int) -> None:
        assert gumbel_centering(m, 2) == pytest.approx(2 * math.log(m / 2), abs=1e-14)

    def test_centering_value(self) -> None:
        expected = 2 * math.log(10) + math.log(math.log(10)) - 2 * math.lgamma(1.5)
        assert gumbel_centering(20, 3) == pytest.approx(expected, abs=1e-12)
        assert gumbel_centering(20, 3) == pytest.approx(5.681, abs=1e-3)

    def test_centering_degenerate(self) -> None:
        with pytest.raises(PreconditionError):
            gumbel_centering(2, 3)

    @pytest.mark.parametrize("k_eff", [1, 3, 5])
    def test_centering_monotone(self, k_eff: int) -> None:
        values = [gumbel_centering(m, k_eff) for m in range(6, 201)]
        assert np.all(np.diff(values) > 0)

    def test_pair_pvalue(self) -> None:
        assert pair_pvalue(0.0, 3) == 1.0
        assert pair_pvalue(7.8147, 3) == pytest.approx(0.05, abs=1e-5)
        tail = [pair_pvalue(x, 3) for x in (10.0, 20.0, 40.0, 80.0)]
        assert np.all(np.diff(tail) < 0)

    def test_group_pvalue(self) -> None:
        b = gumbel_centering(10, 3)
        assert group_pvalue(b, 10, 3) == pytest.approx(1 - math.exp(-1))
        assert group_pvalue(b + 200.0, 10, 3) < 1e-40

    def test_group_critical_value(self) -> None:
        b = gumbel_centering(10, 3)
        critical = group_critical_value(0.05, 10, 3)
        assert critical == pytest.approx(b + 5.9404, abs=1e-4)
        assert group_pvalue(critical, 10, 3) == pytest.approx(0.05)

    def test_pair_critical_value(self) -> None:
        assert pair_critical_value(0.05, 3) == pytest.approx(stats.chi2.ppf(0.95, 3))

    def test_max_chi2(self) -> None:
        assert max_chi2_pvalue(4.0, 1, 3) == pytest.approx(pair_pvalue(4.0, 3))
        critical = max_chi2_critical_value(0.05, 2, 3)
        assert max_chi2_pvalue(critical, 2, 3) == pytest.approx(0.05, rel=1e-8)
        assert max_chi2_pvalue(5.0, 2, 3) == pytest.approx(1 - stats.chi2.cdf(5.0, 3) ** 2)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.1])
    def test_bad_alpha(self, alpha: float) -> None:
        with pytest.raises(PreconditionError):
            pair_critical_value(alpha, 3)

    def test_degrees_of_freedom(self) -> None:
        assert degrees_of_freedom(Variant.T, 3) == 3
        assert degrees_of_freedom(Variant.T_RATIO, 3) == 2


class TestRunPairTest:
    """Tests for the end-to-end pair test."""

    def test_same_node_rejected(self, sampled_example1) -> None:
        X, _, _ = sampled_example1
        with pytest.raises(PreconditionError, match="distinct"):
            run_pair_test(X, 4, 4)

    def test_report(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        report = run_pair_test(X, group[0], group[1], k0_override=3)
        assert report.scope is Scope.PAIR
        assert report.k0 == 3 and report.k0_rule == "override"
        assert report.df == 3
        assert report.calibration == "chi2"
        assert report.reject == (report.statistic >= report.critical_value)
        assert report.p_value == pytest.approx(pair_pvalue(report.statistic, 3))
        assert report.error_bound > 0

    def test_one_based_json(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        report = run_pair_test(X, group[0], group[1], k0_override=3).one_based()
        data = json.loads(report.model_dump_json())
        assert data["nodes"] == [group[0] + 1, group[1] + 1]
        assert data["index_base"] == 1
        assert data["variant"] == "T"

    def test_ratio_variant(self, sampled_example2) -> None:
        X, _, group = sampled_example2
        report = run_pair_test(X, group[0], group[1], variant="T_ratio", k0_override=3)
        assert report.variant is Variant.T_RATIO
        assert report.df == 2

    def test_ratio_needs_two_eigenpairs(self, sampled_example2) -> None:
        X, _, group = sampled_example2
        with pytest.raises(PreconditionError, match="use variant T"):
            run_pair_test(X, group[0], group[1], variant="T_ratio", k0_override=1)

    @pytest.mark.parametrize("kwargs", [{"alpha": 1.5}, {"k0_override": 0}])
    def test_bad_arguments(self, sampled_example1, kwargs) -> None:
        X, _, _ = sampled_example1
        with pytest.raises(PreconditionError):
            run_pair_test(X, 0, 1, **kwargs)

    def test_node_out_of_range(self, sampled_example1) -> None:
        X, _, _ = sampled_example1
        with pytest.raises(PreconditionError, match="outside"):
            run_pair_test(X, 0, X.n)


class TestRunGroupTest:
    """Tests for the end-to-end group test."""

    def test_single_node_group(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        with pytest.raises(PreconditionError):
            run_group_test(X, group[:1], seed=1)

    def test_gumbel_report(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        report = run_group_test(X, group, seed=7, k0_override=3)
        assert report.scope is Scope.GROUP
        assert report.calibration == "gumbel"
        assert report.m == 10
        assert report.b_m == pytest.approx(gumbel_centering(10, 3))
        assert report.statistic == pytest.approx(max(report.pair_statistics))
        assert report.reject == (report.statistic >= report.critical_value)
        assert sorted(report.coupling.nodes) == sorted(group)

    def test_same_seed_same_report(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        a = run_group_test(X, group, seed=3, k0_override=3)
        b = run_group_test(X, group, seed=3, k0_override=3)
        assert a.model_dump_json() == b.model_dump_json()

    def test_small_group_uses_max_chi2(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        report = run_group_test(X, group[:4], seed=1, k0_override=3)
        assert report.calibration == "max-chi2"
        assert report.b_m is None
        assert any("max-chi-square" in w for w in report.warnings)

    def test_odd_group(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        report = run_group_test(X, group[:7], seed=1, k0_override=3)
        assert report.m == 6
        assert report.coupling.dropped_node in group[:7]
        assert any("Odd group" in w for w in report.warnings)

    def test_subsample(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        report = run_group_test(X, group, seed=1, k0_override=3, subsample=6)
        assert len(report.nodes) == 6
        assert set(report.nodes) <= set(group)

    def test_one_based_coupling(self, sampled_example1) -> None:
        X, _, group = sampled_example1
        report = run_group_test(X, group, seed=7, k0_override=3)
        shifted = report.one_based()
        assert shifted.coupling.pairs == tuple((a + 1, b + 1) for a, b in report.coupling.pairs)
        assert shifted.one_based() is shifted


class TestDecisionConsistency:
    """Rejection agrees with the reported p-value for every calibration."""

    ALPHAS = (0.001, 0.01, 0.05, 0.1, 0.2, 0.5, 0.9)

    @pytest.mark.parametrize("calibration", ["chi2", "gumbel", "max-chi2"])
    def test_reject_iff_pvalue_at_most_alpha(self, sampled_example1, calibration: str) -> None:
        X, _, group = sampled_example1
        run = {
            "chi2": lambda a: run_pair_test(X, group[0], group[-1], alpha=a, k0_override=3),
            "gumbel": lambda a: run_group_test(X, group, alpha=a, seed=7, k0_override=3),
            "max-chi2": lambda a: run_group_test(X, group[:4], alpha=a, seed=7, k0_override=3),
        }[calibration]
        p = run(0.05).p_value
        near = {min(max(p * f, 1e-6), 1 - 1e-6) for f in (0.5, 0.99, 1.01, 2.0)}

        decisions = []
        for alpha in sorted(set(self.ALPHAS) | near):
            report = run(alpha)
            assert report.calibration == calibration
            assert report.p_value == pytest.approx(p, rel=1e-12)
            if abs(report.p_value - alpha) <= 1e-9:
                continue
            assert report.reject == (report.p_value <= alpha)
            assert report.reject == (report.statistic >= report.critical_value)
            decisions.append(report.reject)
        assert decisions == sorted(decisions)

    def test_ratio_pair(self, sampled_example2) -> None:
        X, _, group = sampled_example2
        for alpha in self.ALPHAS:
            report = run_pair_test(X, group[0], group[1], alpha=alpha, variant="T_ratio", k0_override=3)
            if abs(report.p_value - alpha) > 1e-9:
                assert report.reject == (report.p_value <= alpha)


class TestErrorBounds:

    def test_finite_and_positive(self, sampled_example1) -> None:
        X, _, _ = sampled_example1
        spec = eigendecompose(X)
        bound = estimation_error_bounds(spec, X, 3)
        assert np.isfinite(bound) and bound > 0

    def test_empty_graph_is_infinite(self) -> None:
        X = np.zeros((5, 5), dtype=np.int8)
        assert estimation_error_bounds(eigendecompose(X), X, 1) == float("inf")

    def test_formula(self, sampled_example1) -> None:
        X, _, _ = sampled_example1
        spec = eigendecompose(X)
        A = X.values
        n = X.n
        q = np.sqrt(A.sum(axis=0).max())
        theta = A.sum() / n ** 2
        expected = (
            q * np.sqrt(np.log(n)) / abs(spec.eigenvalues[2])
            + np.abs(spec.eigenvectors[:, :3]).max() * np.sqrt(np.log(n)) / np.sqrt(theta)
        )
        assert_allclose(estimation_error_bounds(spec, X, 3), expected, rtol=1e-12)
