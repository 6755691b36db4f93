"""
Heavy-tailed Pareto-type coefficients.

Only the modulus law matters here: R_C(r) = 1 - r^{1-alpha} for r >= 1,
with a uniform, independent phase.
"""
import math
from dataclasses import dataclass

import numpy as np

from apps.core.exceptions import EnsembleError

from ..interfaces import BaseEnsemble, uniform_phases


@dataclass(frozen=True)
class ParetoEnsemble(BaseEnsemble):
    alpha: float

    name = 'pareto'

    def __post_init__(self):
        if not self.alpha > 1.0:
            raise EnsembleError(f"Pareto ensemble needs alpha > 1, got {self.alpha}")

    @property
    def spec(self) -> str:
        return f"{self.name}:alpha={self.alpha:g}"

    def sample_coefficients(self, n, rng):
        u = rng.random(n + 1)
        moduli = (1.0 - u) ** (-1.0 / (self.alpha - 1.0))
        return moduli * uniform_phases(rng, n + 1)

    def modulus_cdf(self, r):
        r = np.asarray(r, dtype=float)
        safe = np.maximum(r, 1.0)
        return np.where(r >= 1.0, 1.0 - safe ** (1.0 - self.alpha), 0.0)

    def modulus_density(self, r):
        r = np.asarray(r, dtype=float)
        safe = np.maximum(r, 1.0)
        return np.where(r >= 1.0, (self.alpha - 1.0) * safe ** (-self.alpha), 0.0)

    def moment(self, t):
        if t >= self.alpha - 1.0:
            return math.inf
        return (self.alpha - 1.0) / (self.alpha - 1.0 - t)

    def expected_log_modulus(self):
        return 1.0 / (self.alpha - 1.0)
