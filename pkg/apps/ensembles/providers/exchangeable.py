"""
Dependent but exchangeable coefficients C_k = s*A + G_k.

A and the G_k are independent standard complex Gaussians and A is shared by
every coefficient, so the C_k are dependent for s > 0 while all moduli have
the same law (that of a complex Gaussian with E|C|^2 = 1 + s^2).
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import dblquad

from apps.core.exceptions import EnsembleError

from ..interfaces import BaseEnsemble
from .gaussian import complex_gaussian


def _marginal_density(x: float, y: float, s: float) -> float:
    """Planar density of s*A + G_0 (Gaussian convolution)."""
    variance = 1.0 + s * s
    return math.exp(-(x * x + y * y) / variance) / (math.pi * variance)


@lru_cache(maxsize=64)
def _integrate_modulus(s: float, t: float, logarithm: bool) -> float:
    """E|C_0|^t (or E log|C_0|) by 2-D integration in polar coordinates."""
    def integrand(theta, r):
        weight = _marginal_density(r * math.cos(theta), r * math.sin(theta), s) * r
        if logarithm:
            return math.log(r) * weight if r > 0.0 else 0.0
        return r ** t * weight

    # the density is negligible beyond 12 standard deviations
    outer = 12.0 * math.sqrt(1.0 + s * s)
    value, _ = dblquad(integrand, 0.0, outer, 0.0, 2.0 * math.pi, epsabs=1e-12, epsrel=1e-10)
    return value


@dataclass(frozen=True)
class ExchangeableEnsemble(BaseEnsemble):
    s: float = 1.0

    name = 'exchangeable'
    is_iid = False

    def __post_init__(self):
        if not self.s >= 0.0:
            raise EnsembleError(f"Exchangeable ensemble needs s >= 0, got {self.s}")

    @property
    def spec(self) -> str:
        return f"{self.name}:s={self.s:g}"

    def sample_coefficients(self, n, rng):
        shared = complex_gaussian(rng, 1)[0]
        return self.s * shared + complex_gaussian(rng, n + 1)

    def modulus_cdf(self, r):
        r = np.maximum(np.asarray(r, dtype=float), 0.0)
        return -np.expm1(-r ** 2 / (1.0 + self.s ** 2))

    def modulus_density(self, r):
        r = np.asarray(r, dtype=float)
        variance = 1.0 + self.s ** 2
        return np.where(r >= 0.0, 2.0 * r / variance * np.exp(-r ** 2 / variance), 0.0)

    def moment(self, t):
        return _integrate_modulus(float(self.s), float(t), False)

    def expected_log_modulus(self):
        return _integrate_modulus(float(self.s), 0.0, True)
