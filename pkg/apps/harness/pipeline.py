"""
Experiment pipeline: Monte Carlo runs that compare empirical root statistics
with the matching theoretical bounds.
"""
import dataclasses
import logging
import math
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from apps.bounds.evaluators import (
    BoundInputs,
    compact_set_bound,
    discrepancy_factor,
    disk_count_main_term,
    iid_expected_max_bound,
    moment_max_bound,
    noniid_bound,
    norm_comparison,
    order_stat_discrepancy_bound,
    thm_main_bound,
)
from apps.core import constants
from apps.core.constants import EULER_GAMMA
from apps.core.exceptions import (
    BoundDomainError,
    BoundViolationError,
    ConfigError,
    EnsembleError,
    ScalingCheckError,
    SolverFailureError,
)
from apps.ensembles.interfaces import BaseEnsemble
from apps.ensembles.order_stats import exact_log_max, expected_log_max_bound, gaussian_log_max_exact
from apps.ensembles.providers.unimodular import UnimodularEnsemble
from apps.ensembles.services import expected_log_modulus, moment_t, noniid_moments
from apps.measure.regions import AnnularSector, ClosedOriginDisk, InscribedPolygon, PointDisk, Region

from .executors import BaseTrialExecutor, get_executor
from .records import DecaySummary, ExperimentConfig, ExperimentRecord, build_record, summarize
from .trials import (
    CENSUS_CHECKS,
    census_trial,
    discrepancy_trial,
    fielding_trial,
    log_max_trial,
    norm_comparison_trial,
    zero_count_trial,
)

logger = logging.getLogger(__name__)

#: ensembles whose order-statistics table gets an exact-value row
EXACT_ORDER_STATS = ('gaussian', 'pareto')

FIELDING_MIN_DEGREE = 16


def fielding_reference(n: int) -> float:
    """(1/2) log(n + 1) - gamma / 2."""
    return 0.5 * math.log(n + 1) - EULER_GAMMA / 2.0


def spread(values: Sequence[float]) -> float:
    """max / min of a positive column; inf when the column touches 0."""
    data = np.asarray(values, dtype=float)
    low = float(np.min(data))
    if low <= 0.0:
        return math.inf
    return float(np.max(data)) / low


class ExperimentPipeline:
    """Runs experiments trial by trial and reduces them into CSV records."""

    def __init__(self, lab_config: Optional[Dict[str, Any]] = None, executor: Optional[BaseTrialExecutor] = None):
        """
        Initialize the pipeline.

        Args:
            lab_config: Lab settings (defaults to settings.LAB_CONFIG)
            executor: Trial executor; by default chosen per run from config.workers
        """
        lab_config = lab_config or settings.LAB_CONFIG
        self.slack = lab_config['BOUND_SLACK']
        self.discard_threshold = lab_config['DISCARD_THRESHOLD']
        self.polygon_constant = lab_config['POLYGON_CONSTANT']
        self.executor = executor
        self.lab_config = lab_config

    def _map(self, fn, config: ExperimentConfig) -> List[Any]:
        executor = self.executor or get_executor(config.workers)
        return executor.map(fn, range(config.trials))

    def _record(self, experiment: str, config: ExperimentConfig, n: int, outcomes, bound: float) -> ExperimentRecord:
        record = build_record(experiment, config, n, outcomes, bound, self.discard_threshold)
        if record.discarded:
            logger.warning(f"{experiment} n={n}: discarded {record.discarded} of {record.trials} trials")
        if record.flagged:
            logger.warning(f"{experiment} n={n}: discard rate above {self.discard_threshold:g}, run flagged")
        if record.violations:
            logger.error(f"{experiment} n={n}: {record.violations} deterministic bound violations")
        return record

    @staticmethod
    def _finite_moment(ensemble: BaseEnsemble, t: float) -> float:
        mu_t = moment_t(ensemble, t)
        if not math.isfinite(mu_t):
            raise EnsembleError(f"E|C|^{t:g} is infinite for {ensemble.spec}; pick a smaller t")
        return mu_t

    def _discrepancy_bound(self, config: ExperimentConfig, n: int, r: float) -> float:
        ensemble = config.ensemble
        e_log_c0 = expected_log_modulus(ensemble)
        if ensemble.is_iid:
            inputs = BoundInputs(n=n, r=r, t=config.t, mu_t=self._finite_moment(ensemble, config.t), e_log_c0=e_log_c0)
            return thm_main_bound(inputs)
        mu, sigma = noniid_moments(ensemble)
        return noniid_bound(BoundInputs(n=n, r=r, e_log_c0=e_log_c0, mu_abs=mu, sigma_abs=sigma))

    def run_discrepancy(self, config: ExperimentConfig) -> List[ExperimentRecord]:
        """
        Expected annular discrepancy per degree against the iid (or exchangeable)
        bound. Every realization is also checked against the deterministic
        annular bound; the count lands in ``violations``.
        """
        config.require_root_degrees()
        region = config.region or AnnularSector(config.r, config.alpha, config.beta)
        if not isinstance(region, AnnularSector):
            raise ConfigError(f"discrepancy runs need an annular sector, got {region}")
        r, alpha, beta = region.r, region.alpha, region.beta

        logger.info(f"Discrepancy run: {config.ensemble.spec}, degrees {config.degrees}, {config.trials} trials")
        records = []
        for n in config.degrees:
            fn = partial(
                discrepancy_trial, ensemble=config.ensemble, n=n, seed=config.seed, r=r, alpha=alpha,
                beta=beta, tol=config.tol, max_iter=config.max_iter, grid=config.grid_for(n), slack=self.slack,
            )
            record = self._record('discrepancy', config, n, self._map(fn, config), self._discrepancy_bound(config, n, r))
            records.append(record)
            if config.ensemble.name == 'gaussian':
                exact = order_stat_discrepancy_bound(
                    n, r, gaussian_log_max_exact(n), expected_log_modulus(config.ensemble)
                )
                records.append(dataclasses.replace(record, experiment='discrepancy-exact', bound=exact, violations=0))
        logger.info(f"Discrepancy run finished: {len(records)} records")
        return records

    def _count_bound(self, config: ExperimentConfig, n: int, region: Region) -> float:
        if isinstance(region, ClosedOriginDisk):
            inputs = BoundInputs(
                n=n, t=config.t, mu_t=self._finite_moment(config.ensemble, config.t),
                e_log_c0=expected_log_modulus(config.ensemble), d=region.distance_to_circle,
            )
            return compact_set_bound(inputs)
        if isinstance(region, PointDisk):
            return disk_count_main_term(n, region.r)
        if isinstance(region, InscribedPolygon):
            return self.polygon_constant * math.sqrt(n * math.log(n))
        raise ConfigError(f"zero counts are defined for origin disks, point disks and polygons, got {region}")

    def run_zero_count(self, config: ExperimentConfig, region: Optional[Region] = None) -> List[ExperimentRecord]:
        """Expected number of zeros in a region (statistic n * tau_n(region))."""
        config.require_root_degrees()
        region = region or config.region
        if region is None:
            raise ConfigError("count runs need a region")

        logger.info(f"Count run: {region} for {config.ensemble.spec}, degrees {config.degrees}")
        records = []
        for n in config.degrees:
            bound = self._count_bound(config, n, region)
            fn = partial(
                zero_count_trial, ensemble=config.ensemble, n=n, seed=config.seed, region=region,
                tol=config.tol, max_iter=config.max_iter, polygon_constant=self.polygon_constant,
            )
            records.append(self._record('count', config, n, self._map(fn, config), bound))
        return records

    def run_order_stats(self, config: ExperimentConfig) -> List[ExperimentRecord]:
        """E log max_k |C_k| from the coefficients alone, against the moment bound."""
        logger.info(f"Order statistics run: {config.ensemble.spec}, degrees {config.degrees}, t={config.t:g}")
        records = []
        for n in config.degrees:
            bound = expected_log_max_bound(config.ensemble, n, config.t)
            fn = partial(log_max_trial, ensemble=config.ensemble, n=n, seed=config.seed)
            record = self._record('orderstats', config, n, self._map(fn, config), bound)
            records.append(record)
            if config.ensemble.name in EXACT_ORDER_STATS:
                exact = exact_log_max(config.ensemble, n)
                records.append(dataclasses.replace(record, experiment='orderstats-exact', bound=exact))
        return records

    def run_norm_comparison(self, config: ExperimentConfig) -> List[ExperimentRecord]:
        """E log ||P_n||_2 against (1/2) log(n + 1) + E log Y_n."""
        records = []
        for n in config.degrees:
            e_log_max = exact_log_max(config.ensemble, n)
            if e_log_max is None:
                e_log_max = expected_log_max_bound(config.ensemble, n, config.t)
            _, upper = norm_comparison(n, e_log_max)
            fn = partial(norm_comparison_trial, ensemble=config.ensemble, n=n, seed=config.seed, slack=self.slack)
            records.append(self._record('comparison', config, n, self._map(fn, config), upper))
        return records

    def run_fielding_check(self, n: int, trials: int, seed: int, workers: int = 1) -> ExperimentRecord:
        """E log M(P_n) for unimodular coefficients against (1/2) log(n + 1) - gamma / 2."""
        if n < FIELDING_MIN_DEGREE:
            raise ConfigError(f"the Fielding check needs n >= {FIELDING_MIN_DEGREE}, got {n}")
        config = self._fielding_config(n, trials, seed, workers)
        fn = partial(
            fielding_trial, ensemble=config.ensemble, n=n, seed=seed, tol=config.tol, max_iter=config.max_iter,
        )
        return self._record('fielding', config, n, self._map(fn, config), fielding_reference(n))

    def _fielding_config(self, n, trials, seed, workers) -> ExperimentConfig:
        return ExperimentConfig(
            ensemble=UnimodularEnsemble(), degrees=(n,), trials=trials, seed=seed, workers=workers,
            tol=self.lab_config['SOLVER_TOL'], max_iter=self.lab_config['SOLVER_MAX_ITER'],
        )

    def verify(self, config: ExperimentConfig) -> List[ExperimentRecord]:
        """
        Census of the per-realization inequalities: one row per family and
        degree, mean = average left side, bound = average right side.
        """
        config.require_root_degrees()
        logger.info(f"Census: {config.ensemble.spec}, degrees {config.degrees}, {config.trials} trials")
        records = []
        for n in config.degrees:
            fn = partial(
                census_trial, ensemble=config.ensemble, n=n, seed=config.seed, sectors=config.sectors,
                radii=config.radii, powers=config.powers, grid=config.grid_for(n),
                tol=config.tol, max_iter=config.max_iter,
            )
            outcomes = self._map(fn, config)
            used = [o for o in outcomes if o.converged]
            for family in CENSUS_CHECKS:
                pairs = [pair for o in used for pair in o.checks[family]]
                lhs = [left for left, _ in pairs]
                rhs = [right for _, right in pairs]
                mean, stderr = summarize(lhs)
                bound, _ = summarize(rhs)
                discarded = len(outcomes) - len(used)
                record = ExperimentRecord(
                    experiment=f'verify-{family}',
                    ensemble=config.ensemble.spec,
                    n=n,
                    trials=len(outcomes),
                    trials_used=len(used),
                    discarded=discarded,
                    mean=mean,
                    stderr=stderr,
                    bound=bound,
                    seed=config.seed,
                    violations=sum(1 for left, right in pairs if left > right + self.slack),
                    flagged=discarded > self.discard_threshold * len(outcomes),
                )
                if record.violations:
                    logger.error(f"{record.experiment} n={n}: {record.violations} of {len(pairs)} checks violated")
                records.append(record)
        return records


def bound_table(ensemble: BaseEnsemble, n: int, r: float, t: float, d: float, disk_r: float) -> List[Tuple[str, float]]:
    """Every bound evaluated at one parameter point; NaN where it is undefined."""
    def attempt(fn):
        try:
            return float(fn())
        except (BoundDomainError, EnsembleError) as e:
            logger.debug(f"bound undefined for {ensemble.spec}, n={n}: {e}")
            return math.nan

    e_log_c0 = expected_log_modulus(ensemble)
    mu_t = moment_t(ensemble, t)
    exact = exact_log_max(ensemble, n)

    def iid_inputs(**extra):
        return BoundInputs(n=n, r=r, t=t, mu_t=mu_t, e_log_c0=e_log_c0, **extra)

    def noniid():
        mu, sigma = noniid_moments(ensemble)
        return noniid_bound(BoundInputs(n=n, r=r, e_log_c0=e_log_c0, mu_abs=mu, sigma_abs=sigma))

    def expected_max():
        mu = moment_t(ensemble, 1.0)
        sigma = math.sqrt(max(moment_t(ensemble, 2.0) - mu * mu, 0.0))
        return iid_expected_max_bound(mu, sigma, n)

    table = [(name, constants.get(name).value) for name in constants.names()]
    table += [
        ('discrepancy_factor', attempt(lambda: discrepancy_factor(r))),
        ('thm_main_bound', attempt(lambda: thm_main_bound(iid_inputs()))),
        ('noniid_bound', attempt(noniid)),
        ('compact_set_bound', attempt(lambda: compact_set_bound(iid_inputs(d=d)))),
        ('disk_count_main_term', attempt(lambda: disk_count_main_term(n, disk_r))),
        ('expected_log_max_bound', attempt(lambda: expected_log_max_bound(ensemble, n, t))),
        ('exact_log_max', math.nan if exact is None else exact),
        ('order_stat_discrepancy_bound', math.nan if exact is None else attempt(
            lambda: order_stat_discrepancy_bound(n, r, exact, e_log_c0)
        )),
        ('norm_comparison_upper', attempt(
            lambda: norm_comparison(n, exact if exact is not None else expected_log_max_bound(ensemble, n, t))[1]
        )),
        ('moment_max_bound', moment_max_bound(n, mu_t)),
        ('iid_expected_max_bound', attempt(expected_max)),
    ]
    return table


def check(records: Sequence[ExperimentRecord]):
    """Raise when a run saw deterministic violations or too many solver failures."""
    violations = sum(record.violations for record in records)
    if violations:
        raise BoundViolationError(f"{violations} deterministic bound violations", violations=violations)
    flagged = [record for record in records if record.flagged]
    if flagged:
        worst = max(flagged, key=lambda record: record.discarded / record.trials)
        raise SolverFailureError(
            f"solver failure rate {worst.discarded}/{worst.trials} at n={worst.n} ({worst.experiment})"
        )


def decay_rate_summary(records: Sequence[ExperimentRecord], limit: float = 3.0, strict: bool = True) -> DecaySummary:
    """
    Scale each discrepancy mean by sqrt(n / log(n + 1)); the column should be
    flat across degrees if the discrepancy decays like sqrt(log n / n).

    Rows are (n, mean, scaled mean, scaled bound).
    """
    rows = []
    for record in records:
        if record.experiment != 'discrepancy':
            continue
        scale = math.sqrt(record.n / math.log(record.n + 1))
        rows.append((record.n, record.mean, record.mean * scale, record.bound * scale))
    if len({row[0] for row in rows}) < 3:
        raise ConfigError("the decay-rate summary needs discrepancy records for at least 3 degrees")

    summary = DecaySummary(rows=rows, ratio=spread([row[2] for row in rows]), limit=limit)
    if strict and not summary.passed:
        raise ScalingCheckError(f"scaled discrepancy spread {summary.ratio:.3g} exceeds {limit:g}")
    return summary


# Singleton instance
_experiment_pipeline = None


def get_experiment_pipeline() -> ExperimentPipeline:
    """Get or create the experiment pipeline singleton."""
    global _experiment_pipeline
    if _experiment_pipeline is None:
        _experiment_pipeline = ExperimentPipeline()
    return _experiment_pipeline
