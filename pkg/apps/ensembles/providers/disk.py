"""
Coefficients uniform on the disk |z| <= K.
"""
import math
from dataclasses import dataclass

import numpy as np

from apps.core.exceptions import EnsembleError

from ..interfaces import BaseEnsemble, uniform_phases


@dataclass(frozen=True)
class DiskEnsemble(BaseEnsemble):
    K: float = 1.0

    name = 'disk'

    def __post_init__(self):
        if not self.K > 0.0:
            raise EnsembleError(f"Disk ensemble needs K > 0, got {self.K}")

    @property
    def spec(self) -> str:
        return f"{self.name}:K={self.K:g}"

    def sample_coefficients(self, n, rng):
        moduli = self.K * np.sqrt(rng.random(n + 1))
        return moduli * uniform_phases(rng, n + 1)

    def modulus_cdf(self, r):
        r = np.clip(np.asarray(r, dtype=float), 0.0, self.K)
        return (r / self.K) ** 2

    def modulus_density(self, r):
        r = np.asarray(r, dtype=float)
        return np.where((r >= 0.0) & (r <= self.K), 2.0 * r / self.K ** 2, 0.0)

    def moment(self, t):
        return 2.0 * self.K ** t / (t + 2.0)

    def expected_log_modulus(self):
        return math.log(self.K) - 0.5
