"""
Coefficients uniformly distributed on the unit circle.
"""
from dataclasses import dataclass

import numpy as np

from apps.core.exceptions import EnsembleError

from ..interfaces import BaseEnsemble, uniform_phases


@dataclass(frozen=True)
class UnimodularEnsemble(BaseEnsemble):
    name = 'unimodular'

    @property
    def spec(self) -> str:
        return self.name

    def sample_coefficients(self, n, rng):
        # modulus draws are consumed and discarded to keep the stream layout shared
        rng.random(n + 1)
        return uniform_phases(rng, n + 1)

    def modulus_cdf(self, r):
        return np.where(np.asarray(r, dtype=float) >= 1.0, 1.0, 0.0)

    def modulus_density(self, r):
        raise EnsembleError("|C| is identically 1 for the unimodular ensemble; it has no density")

    def moment(self, t):
        return 1.0

    def expected_log_modulus(self):
        return 0.0
