"""
Standard complex Gaussian coefficients, density e^{-|z|^2}/pi.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma

from apps.core.constants import EULER_GAMMA

from ..interfaces import BaseEnsemble, uniform_phases, unit_interval_open_at_zero


@dataclass(frozen=True)
class GaussianEnsemble(BaseEnsemble):
    """|C|^2 is standard exponential, so R_C(r) = 1 - e^{-r^2}."""

    name = 'gaussian'

    @property
    def spec(self) -> str:
        return self.name

    def sample_coefficients(self, n, rng):
        return complex_gaussian(rng, n + 1)

    def modulus_cdf(self, r):
        r = np.maximum(np.asarray(r, dtype=float), 0.0)
        return -np.expm1(-r ** 2)

    def modulus_density(self, r):
        r = np.asarray(r, dtype=float)
        return np.where(r >= 0.0, 2.0 * r * np.exp(-r ** 2), 0.0)

    def moment(self, t):
        return float(gamma(t / 2.0 + 1.0))

    def expected_log_modulus(self):
        return -EULER_GAMMA / 2.0


def complex_gaussian(rng: np.random.Generator, size: int, scale: float = 1.0) -> np.ndarray:
    """Draws with E|C|^2 = scale^2, via the same modulus/phase construction."""
    moduli = np.sqrt(-np.log(unit_interval_open_at_zero(rng, size)))
    return scale * moduli * uniform_phases(rng, size)
