"""
Monte Carlo runner.

Replications are independent: each draws its own adjacency matrix and
coupling from seeds derived from the master seed and its replication index,
so results do not depend on the worker schedule.
"""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy.stats import binomtest
from tqdm import tqdm

from ..config import CI_LEVEL, DEFAULT_WORKERS, ECDF_GRID_POINTS
from ..distributions import chi2_cdf, gumbel_cdf
from ..enums import Scope
from ..errors import SimpleRCError
from ..inference import TestReport, run_group_test, run_pair_test
from ..model_core import mean_matrix, sample_adjacency, validate_model
from .sim_config import SimConfig

logger = logging.getLogger("simple_rc.harness")


def replication_seeds(master: int, rep: int) -> Tuple[int, int]:
    """(sampling seed, coupling seed) for one replication"""
    state = np.random.SeedSequence(int(master), spawn_key=(int(rep),)).generate_state(2, np.uint64)
    return int(state[0]), int(state[1])


@dataclass
class RepResult:
    """Outcome of one replication"""
    rep: int
    statistic: Optional[float] = None
    score: Optional[float] = None
    p_value: Optional[float] = None
    reject: bool = False
    k0: Optional[int] = None
    df: Optional[int] = None
    calibration: Optional[str] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    @classmethod
    def from_report(cls, rep: int, report: TestReport) -> "RepResult":
        if report.calibration == "gumbel":
            score = (report.statistic - report.b_m) / 2.0
        else:
            score = report.statistic
        return cls(
            rep=rep,
            statistic=report.statistic,
            score=score,
            p_value=report.p_value,
            reject=report.reject,
            k0=report.k0,
            df=report.df,
            calibration=report.calibration,
        )


class SimSummary(BaseModel):
    """Aggregated outcome of one configuration"""
    config: SimConfig
    label: str
    reps: int
    rejections: int
    failures: int
    rejection_rate: float = Field(ge=0.0, le=1.0)
    ci_low: float
    ci_high: float
    statistics: List[float] = Field(default_factory=list)
    scores: List[float] = Field(default_factory=list)
    k0_counts: Dict[int, int] = Field(default_factory=dict)
    calibration: Optional[str] = None
    reference_df: Optional[int] = None
    failure_messages: Dict[str, int] = Field(default_factory=dict)

    def ecdf(self, points: int = ECDF_GRID_POINTS) -> Dict[str, np.ndarray]:
        """
        Empirical CDF of the calibrated scores on a uniform grid over their
        range, with the reference curve (Gumbel for centered group scores,
        chi-square otherwise).
        """
        scores = np.sort(np.asarray(self.scores, dtype=np.float64))
        if scores.size == 0:
            empty = np.empty(0)
            return {"x": empty, "empirical": empty, "theoretical": empty}
        low, high = float(scores[0]), float(scores[-1])
        if high == low:
            high = low + 1.0
        x = np.linspace(low, high, points)
        empirical = np.searchsorted(scores, x, side="right") / scores.size
        if self.calibration == "gumbel":
            theoretical = np.array([gumbel_cdf(v) for v in x])
        else:
            theoretical = np.array([chi2_cdf(v, self.reference_df) for v in x])
        return {"x": x, "empirical": empirical, "theoretical": theoretical}


class MonteCarloRunner:
    """
    Run the replications of one SimConfig.

    Supports:
    - Sequential execution (workers=1)
    - Thread-pool execution; LAPACK releases the GIL during eigensolves
    """

    def __init__(self, config: SimConfig, workers: int = DEFAULT_WORKERS, progress: bool = False):
        """
        Args:
            config: simulation cell
            workers: thread count
            progress: show a tqdm bar
        """
        self.config = config
        self.workers = max(1, int(workers))
        self.progress = progress

        self.model, self.group = config.build_model()
        report = validate_model(self.model)
        if not report.ok:
            logger.warning(f"Model {config.label} violates conditions: {report.violations}")
        self.mean = mean_matrix(self.model)

    def run_single(self, rep: int) -> RepResult:
        """
        One replication; library errors become failed results.
        """
        cfg = self.config
        sample_seed, coupling_seed = replication_seeds(cfg.seed, rep)
        try:
            X = sample_adjacency(self.model, sample_seed, mean=self.mean)
            if cfg.scope is Scope.PAIR:
                report = run_pair_test(
                    X, self.group[0], self.group[-1],
                    alpha=cfg.alpha,
                    variant=cfg.variant,
                    k0_override=cfg.k0,
                    loglog_multiplier=cfg.loglog_multiplier,
                )
            else:
                report = run_group_test(
                    X, self.group,
                    alpha=cfg.alpha,
                    variant=cfg.variant,
                    seed=coupling_seed,
                    k0_override=cfg.k0,
                    subsample=cfg.subsample,
                    loglog_multiplier=cfg.loglog_multiplier,
                )
        except SimpleRCError as e:
            logger.warning(f"Replication {rep} failed: {type(e).__name__}: {e}")
            return RepResult(rep=rep, error=type(e).__name__)
        return RepResult.from_report(rep, report)

    def run(self) -> SimSummary:
        """Run all replications and summarize"""
        reps = self.config.reps
        logger.info(f"Monte Carlo {self.config.label}: {reps} reps on {self.workers} worker(s)")
        if self.workers == 1:
            results = self._run_sequential(reps)
        else:
            results = self._run_parallel(reps)
        return self.summarize_results(self.config, results)

    def _run_sequential(self, reps: int) -> List[RepResult]:
        results = []
        for rep in tqdm(range(reps), disable=not self.progress, desc=self.config.label):
            results.append(self.run_single(rep))
        return results

    def _run_parallel(self, reps: int) -> List[RepResult]:
        results: List[Optional[RepResult]] = [None] * reps
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            future_to_idx = {executor.submit(self.run_single, rep): rep for rep in range(reps)}
            bar = tqdm(total=reps, disable=not self.progress, desc=self.config.label)
            for future in as_completed(future_to_idx):
                idx = future_to_idx[future]
                results[idx] = future.result()
                bar.update(1)
            bar.close()
        return results

    @staticmethod
    def summarize_results(config: SimConfig, results: List[RepResult]) -> SimSummary:
        """
        Reduce replication results in replication order.

        Failed replications count as non-rejections. ECDF scores keep the
        modal calibration and, for chi-square, the modal df only.
        """
        reps = len(results)
        done = [r for r in results if not r.failed]
        rejections = sum(1 for r in done if r.reject)
        failures = reps - len(done)

        interval = binomtest(rejections, reps).proportion_ci(confidence_level=CI_LEVEL, method="wilson")
        calibration = Counter(r.calibration for r in done).most_common(1)[0][0] if done else None
        calibrated = [r for r in done if r.calibration == calibration]
        dfs = Counter(r.df for r in calibrated)
        reference_df = min(d for d, c in dfs.items() if c == max(dfs.values())) if calibrated else None
        # chi-square scores are only comparable at a single df
        if calibration != "gumbel":
            calibrated = [r for r in calibrated if r.df == reference_df]

        summary = SimSummary(
            config=config,
            label=config.label,
            reps=reps,
            rejections=rejections,
            failures=failures,
            rejection_rate=rejections / reps,
            ci_low=float(interval.low),
            ci_high=float(interval.high),
            statistics=[r.statistic for r in done],
            scores=[r.score for r in calibrated],
            k0_counts=dict(sorted(Counter(r.k0 for r in done).items())),
            calibration=calibration,
            reference_df=reference_df,
            failure_messages=dict(sorted(Counter(r.error for r in results if r.failed).items())),
        )
        logger.info(
            f"{config.label}: rate {summary.rejection_rate:.3f} "
            f"[{summary.ci_low:.3f}, {summary.ci_high:.3f}], failures {failures}"
        )
        return summary


def monte_carlo(config: SimConfig, workers: int = DEFAULT_WORKERS, progress: bool = False) -> SimSummary:
    """Run one configuration and return its summary"""
    return MonteCarloRunner(config, workers=workers, progress=progress).run()
