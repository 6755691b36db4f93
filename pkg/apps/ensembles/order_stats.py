"""
Order statistics of the coefficient moduli: Y_n = max_k |C_k|.
"""
import logging
import math
from functools import lru_cache

import mpmath
from scipy.integrate import quad

from apps.core.constants import EULER_GAMMA
from apps.core.exceptions import EnsembleError

from .interfaces import BaseEnsemble

logger = logging.getLogger(__name__)

# Above this degree the alternating binomial sum loses too many digits.
ALTERNATING_SUM_CUTOFF = 25


def max_density(ens: BaseEnsemble, n: int, r):
    """rho_{Y_n}(r) = (n + 1) rho_C(r) R_C(r)^n for iid moduli."""
    if not ens.is_iid:
        raise EnsembleError(
            f"The maximum density needs independent moduli; {ens.spec} is not iid"
        )
    if n < 0:
        raise EnsembleError(f"Degree must be non-negative, got {n}")
    return (n + 1) * ens.modulus_density(r) * ens.modulus_cdf(r) ** n


def expected_log_max_bound(ens: BaseEnsemble, n: int, t: float) -> float:
    """E log Y_n <= (1/t)(log(n + 1) + log E|C_0|^t)."""
    if not t > 0:
        raise EnsembleError(f"Moment order must be positive, got {t}")
    mu = ens.moment(t)
    if not math.isfinite(mu):
        raise EnsembleError(f"E|C|^{t:g} is infinite for {ens.spec}")
    return (math.log(n + 1) + math.log(mu)) / t


def harmonic(n: int) -> float:
    """H_n = sum_{k <= n} 1/k."""
    if n < 1:
        raise EnsembleError(f"Harmonic numbers start at n = 1, got {n}")
    return math.fsum(1.0 / k for k in range(1, n + 1))


def pareto_log_max_exact(n: int, alpha: float) -> float:
    """E log Y_n = H_{n+1} / (alpha - 1) for the Pareto modulus law."""
    if not alpha > 1.0:
        raise EnsembleError(f"Pareto ensemble needs alpha > 1, got {alpha}")
    if n < 0:
        raise EnsembleError(f"Degree must be non-negative, got {n}")
    return harmonic(n + 1) / (alpha - 1.0)


def gaussian_log_max_sum(n: int) -> float:
    """
    -gamma/2 + (1/2) sum_{k=2}^{n+1} (-1)^k C(n+1, k) log k, accumulated in
    40-digit arithmetic.
    """
    with mpmath.workdps(40):
        total = mpmath.fsum(
            (-1) ** k * mpmath.binomial(n + 1, k) * mpmath.log(k)
            for k in range(2, n + 2)
        )
        return -EULER_GAMMA / 2.0 + float(total) / 2.0


@lru_cache(maxsize=256)
def gaussian_log_max_quadrature(n: int) -> float:
    """
    (n + 1)/2 * int_0^1 log(log(1/u)) (1 - u)^n du, which is the integral
    2(n+1) int_0^inf x log x e^{-x^2} (1 - e^{-x^2})^n dx after u = e^{-x^2}.
    """
    def integrand(u):
        return math.log(-math.log(u)) * math.exp(n * math.log1p(-u))

    # the weight (1-u)^n lives on a window of width ~ 1/n next to u = 0
    split = min(0.5, 40.0 / (n + 1))
    head, _ = quad(integrand, 0.0, split, limit=400, epsabs=1e-13, epsrel=1e-12)
    tail, _ = quad(integrand, split, 1.0, limit=400, epsabs=1e-13, epsrel=1e-12)
    return (n + 1) / 2.0 * (head + tail)


def gaussian_log_max_exact(n: int) -> float:
    """E log Y_n for standard complex Gaussian coefficients."""
    if n < 0:
        raise EnsembleError(f"Degree must be non-negative, got {n}")
    if n <= ALTERNATING_SUM_CUTOFF:
        return gaussian_log_max_sum(n)
    return gaussian_log_max_quadrature(n)


def exact_log_max(ens: BaseEnsemble, n: int):
    """Closed-form E log Y_n when one is known for the ensemble, else None."""
    if ens.name == 'gaussian':
        return gaussian_log_max_exact(n)
    if ens.name == 'pareto':
        return pareto_log_max_exact(n, ens.alpha)
    if ens.name == 'unimodular':
        return 0.0
    return None
