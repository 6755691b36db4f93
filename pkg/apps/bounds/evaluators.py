"""
Deterministic and expected-value bounds on root discrepancies and root counts.

Every evaluator is a pure function of its inputs. Logs of non-positive
quantities raise BoundDomainError instead of producing NaN.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Tuple

from apps.core import constants
from apps.core.exceptions import BoundDomainError, HypothesisError, NotAdmissibleError
from apps.polynomials.poly import (
    CircleGrid,
    ComplexPolynomial,
    log_mahler,
    log_mahler_from_roots,
    log_mahler_plus,
    lp_norm,
    normalize,
    sup_norm,
)

logger = logging.getLogger(__name__)

#: how often a diagnostic adjustment was applied (e.g. the m-floor)
diagnostics = Counter()

ONE_OVER_E = 1.0 / math.e


@dataclass(frozen=True)
class BoundInputs:
    """Inputs of the expected-value bounds."""

    n: int
    r: float = 0.5
    t: float = 2.0
    mu_t: float = 1.0
    e_log_c0: float = 0.0
    e_log_cn: Optional[float] = None
    mu_abs: float = 0.0
    sigma_abs: float = 0.0
    d: Optional[float] = None

    def __post_init__(self):
        if self.n < 1:
            raise BoundDomainError(f"n must be at least 1, got {self.n}")
        if not (0.0 < self.r < 1.0):
            raise BoundDomainError(f"r must lie in (0, 1), got {self.r}")
        if not self.t > 0:
            raise BoundDomainError(f"t must be positive, got {self.t}")
        if not self.mu_t > 0:
            raise BoundDomainError(f"E|C|^t must be positive, got {self.mu_t}")
        if self.d is not None and not self.d > 0:
            raise BoundDomainError(f"d must be positive, got {self.d}")


def _log(x: float, what: str) -> float:
    if not x > 0:
        raise BoundDomainError(f"log of non-positive {what}: {x}")
    return math.log(x)


def _sqrt(x: float, what: str) -> float:
    if x < 0:
        raise BoundDomainError(f"negative {what}: {x}")
    return math.sqrt(x)


def catalan_constant() -> float:
    return constants.get('catalan').value


def ganelius_factor() -> float:
    """sqrt(2 pi / k)."""
    return constants.get('ganelius_factor').value


def discrepancy_factor(r: float) -> float:
    """sqrt(2 pi / k) + 2 / (1 - r)."""
    if not (0.0 < r < 1.0):
        raise BoundDomainError(f"r must lie in (0, 1), got {r}")
    return ganelius_factor() + 2.0 / (1.0 - r)


# ------------------------------------------------------------------
# Per-realization (deterministic) bounds
# ------------------------------------------------------------------

def et_ganelius_bound(P: ComplexPolynomial, grid: CircleGrid) -> float:
    """sqrt(2pi/k) * sqrt(log(||P||_inf / sqrt|c_0 c_n|) / n)."""
    if not P.is_admissible():
        raise NotAdmissibleError("Erdos-Turan bound needs c_0 * c_n != 0")
    ratio = sup_norm(P, grid) / math.sqrt(abs(P.constant) * abs(P.leading))
    if ratio < 1.0:
        raise BoundDomainError(f"||P||_inf / sqrt|c_0 c_n| = {ratio} < 1")
    return ganelius_factor() * math.sqrt(math.log(ratio) / P.degree)


def normalized_log_mahler(P: ComplexPolynomial, grid: CircleGrid, roots=None) -> float:
    """
    m(P / sqrt|c_0 c_n|). With roots the root product is used, otherwise the
    grid quadrature.
    """
    if roots is not None:
        return log_mahler_from_roots(P.leading, roots) - 0.5 * math.log(abs(P.constant) * abs(P.leading))
    return log_mahler(normalize(P), grid)


def mignotte_annular_bound(P: ComplexPolynomial, r: float, grid: CircleGrid, roots=None) -> float:
    """
    sqrt(2pi/k) sqrt(m+(Q)/n) + 2 m(Q) / (n (1 - r)) with Q = P / sqrt|c_0 c_n|.

    m(Q) is floored at 0; a negative value can only come from quadrature error.
    """
    if not (0.0 < r < 1.0):
        raise BoundDomainError(f"r must lie in (0, 1), got {r}")
    Q = normalize(P)
    n = P.degree
    m_plus = log_mahler_plus(Q, grid)
    m = normalized_log_mahler(P, grid, roots)
    if m < 0.0:
        diagnostics['mahler_floor'] += 1
        logger.debug(f"m(P/sqrt|c_0 c_n|) = {m:.3e} < 0 floored to 0 (degree {n})")
        m = 0.0
    return ganelius_factor() * math.sqrt(m_plus / n) + 2.0 * m / (n * (1.0 - r))


def mplus_upper_from_lp(P: ComplexPolynomial, p: float, grid: CircleGrid) -> float:
    """m+(P) <= log ||P||_p + 1/(e p), valid when ||P||_p >= 1."""
    norm = lp_norm(P, p, grid)
    if norm < 1.0:
        raise HypothesisError(f"||P||_{p:g} = {norm} < 1")
    return math.log(norm) + ONE_OVER_E / p


def jensen_disk_bounds(P: ComplexPolynomial, r: float, grid: CircleGrid, roots=None) -> Tuple[float, float]:
    """
    ((m - log|c_0|) / (n (1 - r)), (m - log|c_n|) / (n (1 - r))), bounding the
    share of roots in |z| <= r and in |z| >= 1/r.
    """
    if not P.is_admissible():
        raise NotAdmissibleError("Jensen bounds need c_0 * c_n != 0")
    if not (0.0 < r < 1.0):
        raise BoundDomainError(f"r must lie in (0, 1), got {r}")
    if roots is not None:
        m = log_mahler_from_roots(P.leading, roots)
    else:
        m = log_mahler(P, grid)
    scale = P.degree * (1.0 - r)
    inner = (m - math.log(abs(P.constant))) / scale
    outer = (m - math.log(abs(P.leading))) / scale
    return inner, outer


# ------------------------------------------------------------------
# Expected-value bounds
# ------------------------------------------------------------------

def thm_main_bound(inputs: BoundInputs) -> float:
    """Expected annular discrepancy bound for iid coefficients with E|C|^t < inf."""
    n, t = inputs.n, inputs.t
    bracket = (
        (t + 2.0) / (2.0 * t) * math.log(n + 1)
        + _log(inputs.mu_t, 'E|C|^t') / t
        + ONE_OVER_E / 2.0
        - inputs.e_log_c0
    )
    return discrepancy_factor(inputs.r) * _sqrt(bracket / n, 'bracket')


def compact_set_bound(inputs: BoundInputs) -> float:
    """Expected NUMBER of zeros in a compact set at distance d from the circle."""
    if inputs.d is None:
        raise BoundDomainError("compact_set_bound needs d")
    t = inputs.t
    return (inputs.d + 1.0) / inputs.d * (
        (t + 2.0) / t * math.log(inputs.n + 1)
        + 2.0 / t * _log(inputs.mu_t, 'E|C|^t')
        - 2.0 * inputs.e_log_c0
    )


def disk_count_main_term(n: int, r_disk: float) -> float:
    """(2 arcsin(r/2) / pi) n, the leading term of the expected count in D_r(w)."""
    if not (0.0 < r_disk < 2.0):
        raise BoundDomainError(f"disk radius must lie in (0, 2), got {r_disk}")
    return 2.0 * math.asin(r_disk / 2.0) / math.pi * n


def noniid_bound(inputs: BoundInputs) -> float:
    """
    Expected annular discrepancy bound for dependent coefficients with equal
    E|C_k| = mu and Std|C_k| = sigma, using E[Y_n] <= mu + sigma sqrt(n).
    """
    n = inputs.n
    if inputs.mu_abs < 0 or inputs.sigma_abs < 0:
        raise BoundDomainError("mu and sigma must be non-negative")
    e_log_cn = inputs.e_log_c0 if inputs.e_log_cn is None else inputs.e_log_cn
    bracket = (
        0.5 * math.log(n + 1)
        + _log(noniid_expected_max_bound(inputs.mu_abs, inputs.sigma_abs, n), 'mu + sigma sqrt(n)')
        + ONE_OVER_E / 2.0
        - (inputs.e_log_c0 + e_log_cn) / 2.0
    )
    return discrepancy_factor(inputs.r) * _sqrt(bracket / n, 'bracket')


def order_stat_discrepancy_bound(n: int, r: float, e_log_max: float, e_log_c0: float) -> float:
    """
    The discrepancy bound before the moment estimate, with E log Y_n supplied
    directly (e.g. the exact Gaussian value, giving log n + log log n decay).
    """
    bracket = 0.5 * math.log(n + 1) + e_log_max - e_log_c0 + ONE_OVER_E / 2.0
    return discrepancy_factor(r) * _sqrt(bracket / n, 'bracket')


def norm_comparison(n: int, e_log_max: float) -> Tuple[float, float]:
    """E log max|C_k| <= E log ||P_n||_2 <= (1/2) log(n + 1) + E log max|C_k|."""
    return e_log_max, 0.5 * math.log(n + 1) + e_log_max


def iid_expected_max_bound(mu: float, sigma: float, n: int) -> float:
    """E[Y_n] <= mu + sigma n / sqrt(2n + 1) for iid moduli of finite variance."""
    return mu + sigma * n / math.sqrt(2 * n + 1)


def noniid_expected_max_bound(mu: float, sigma: float, n: int) -> float:
    """E[Y_n] <= mu + sigma sqrt(n) for equal means and variances, any dependence."""
    return mu + sigma * math.sqrt(n)


def moment_max_bound(n: int, mu_t: float) -> float:
    """E[Y_n^t] <= (n + 1) E|C_0|^t."""
    return (n + 1) * mu_t
