"""
One-trial workers. Each is a module-level function of the trial index plus
keyword arguments bound with functools.partial, so it pickles to a worker
process; its randomness comes only from RandomStream(seed, trial).
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from apps.bounds.evaluators import (
    et_ganelius_bound,
    jensen_disk_bounds,
    mignotte_annular_bound,
    mplus_upper_from_lp,
)
from apps.ensembles.interfaces import BaseEnsemble
from apps.ensembles.services import sample_coefficients, sample_polynomial
from apps.ensembles.streams import RandomStream
from apps.measure.discrepancy import (
    annular_discrepancy,
    count,
    polygon_cover_violations,
    sector_discrepancy,
    tau,
)
from apps.measure.regions import (
    TWO_PI,
    AnnularSector,
    AnnulusComplement,
    ClosedOriginDisk,
    InscribedPolygon,
    Region,
)
from apps.polynomials.poly import CircleGrid, ComplexPolynomial, log_mahler_from_roots, log_mahler_plus, lp_norm
from apps.polynomials.rootfind import RootMultiset, find_roots

from .records import TrialOutcome

logger = logging.getLogger(__name__)

DISCARDED = TrialOutcome(value=math.nan, converged=False)


def _solve(P: ComplexPolynomial, tol: float, max_iter: int) -> RootMultiset:
    """Roots of an admissible P, or None when the trial has to be discarded."""
    if not P.is_admissible():
        return None
    roots = find_roots(P, tol=tol, max_iter=max_iter)
    return roots if roots.converged else None


def partition_violations(roots, r: float, alpha: float, beta: float) -> int:
    """1 when the annular sectors plus the annulus complement fail to cover every root once."""
    cuts = [(0.0, alpha), (alpha, beta), (beta, TWO_PI)]
    pieces = [AnnularSector(r, a, b) for a, b in cuts if a < b]
    pieces.append(AnnulusComplement(r))
    total = sum(count(roots, piece) for piece in pieces)
    return int(total != len(roots))


def discrepancy_trial(
    trial: int, *, ensemble: BaseEnsemble, n: int, seed: int, r: float,
    alpha: float, beta: float, tol: float, max_iter: int, grid: CircleGrid, slack: float,
) -> TrialOutcome:
    P = sample_polynomial(ensemble, n, RandomStream(seed, trial))
    roots = _solve(P, tol, max_iter)
    if roots is None:
        return DISCARDED
    value = annular_discrepancy(roots, r, alpha, beta)
    violations = partition_violations(roots, r, alpha, beta)
    bound = mignotte_annular_bound(P, r, grid, roots=roots)
    if value > bound + slack:
        logger.error(f"Annular bound violated: trial {trial}, n={n}, {value:.6g} > {bound:.6g}")
        violations += 1
    return TrialOutcome(value=value, violations=violations)


def zero_count_trial(
    trial: int, *, ensemble: BaseEnsemble, n: int, seed: int, region: Region,
    tol: float, max_iter: int, polygon_constant: float,
) -> TrialOutcome:
    P = sample_polynomial(ensemble, n, RandomStream(seed, trial))
    roots = _solve(P, tol, max_iter)
    if roots is None:
        return DISCARDED
    violations = 0
    if isinstance(region, InscribedPolygon):
        violations = polygon_cover_violations(roots, region, n, polygon_constant)
    return TrialOutcome(value=float(count(roots, region)), violations=violations)


def log_max_trial(trial: int, *, ensemble: BaseEnsemble, n: int, seed: int) -> TrialOutcome:
    coeffs = sample_coefficients(ensemble, n, RandomStream(seed, trial))
    return TrialOutcome(value=float(np.log(np.max(np.abs(coeffs)))))


def norm_comparison_trial(
    trial: int, *, ensemble: BaseEnsemble, n: int, seed: int, slack: float,
) -> TrialOutcome:
    """log ||P||_2, checking log Y_n <= log ||P||_2 <= log(n+1)/2 + log Y_n."""
    coeffs = sample_coefficients(ensemble, n, RandomStream(seed, trial))
    log_max = float(np.log(np.max(np.abs(coeffs))))
    log_norm = 0.5 * float(np.log(np.sum(np.abs(coeffs) ** 2)))
    violations = int(log_norm < log_max - slack) + int(log_norm > 0.5 * math.log(n + 1) + log_max + slack)
    return TrialOutcome(value=log_norm, violations=violations)


def fielding_trial(
    trial: int, *, ensemble: BaseEnsemble, n: int, seed: int, tol: float, max_iter: int,
) -> TrialOutcome:
    P = sample_polynomial(ensemble, n, RandomStream(seed, trial))
    roots = _solve(P, tol, max_iter)
    if roots is None:
        return DISCARDED
    return TrialOutcome(value=log_mahler_from_roots(P.leading, roots))


CENSUS_CHECKS = ('et-ganelius', 'mignotte', 'mplus-lp', 'jensen-inner', 'jensen-outer')


@dataclass
class CensusOutcome:
    """(left side, right side) pairs per inequality family for one realization."""

    converged: bool = True
    checks: Dict[str, List[Tuple[float, float]]] = field(
        default_factory=lambda: {name: [] for name in CENSUS_CHECKS}
    )


def census_trial(
    trial: int, *, ensemble: BaseEnsemble, n: int, seed: int,
    sectors: Tuple[Tuple[float, float], ...], radii: Tuple[float, ...], powers: Tuple[float, ...],
    grid: CircleGrid, tol: float, max_iter: int,
) -> CensusOutcome:
    P = sample_polynomial(ensemble, n, RandomStream(seed, trial))
    roots = _solve(P, tol, max_iter)
    if roots is None:
        return CensusOutcome(converged=False)

    outcome = CensusOutcome()
    et_bound = et_ganelius_bound(P, grid)
    for alpha, beta in sectors:
        outcome.checks['et-ganelius'].append((sector_discrepancy(roots, alpha, beta), et_bound))
        for r in radii:
            outcome.checks['mignotte'].append(
                (annular_discrepancy(roots, r, alpha, beta), mignotte_annular_bound(P, r, grid, roots=roots))
            )

    m_plus = log_mahler_plus(P, grid)
    for p in powers:
        if lp_norm(P, p, grid) >= 1.0:
            outcome.checks['mplus-lp'].append((m_plus, mplus_upper_from_lp(P, p, grid)))

    for r in radii:
        inner, outer = jensen_disk_bounds(P, r, grid, roots=roots)
        inner_share = tau(roots, ClosedOriginDisk(r))
        outer_share = tau(roots, AnnulusComplement(r)) - inner_share
        outcome.checks['jensen-inner'].append((inner_share, inner))
        outcome.checks['jensen-outer'].append((outer_share, outer))
    return outcome
