"""
Inference module

Random coupling, pair and group statistics, calibration and the
end-to-end test drivers.
"""

from .types import CouplingPlan, TestReport
from .coupling import random_coupling, subsample_group
from .statistics import (
    pair_contrast,
    pair_statistic,
    pair_statistic_detail,
    group_statistic,
    group_statistic_detail,
)
from .calibration import (
    gumbel_centering,
    pair_pvalue,
    group_pvalue,
    max_chi2_pvalue,
    pair_critical_value,
    group_critical_value,
    max_chi2_critical_value,
)
from .drivers import estimation_error_bounds, run_pair_test, run_group_test

__all__ = [
    # Types
    "CouplingPlan",
    "TestReport",

    # Coupling
    "random_coupling",
    "subsample_group",

    # Statistics
    "pair_contrast",
    "pair_statistic",
    "pair_statistic_detail",
    "group_statistic",
    "group_statistic_detail",

    # Calibration
    "gumbel_centering",
    "pair_pvalue",
    "group_pvalue",
    "max_chi2_pvalue",
    "pair_critical_value",
    "group_critical_value",
    "max_chi2_critical_value",

    # Drivers
    "estimation_error_bounds",
    "run_pair_test",
    "run_group_test",
]
