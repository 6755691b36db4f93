"""
Counter-based random streams.

Every trial owns a disjoint block of the Philox counter space: the key is the
master seed and the trial index sits in the most significant counter word.
A trial's draws therefore depend only on (seed, trial), never on which
worker ran it or in what order.
"""
from dataclasses import dataclass

import numpy as np

from apps.core.exceptions import ConfigError

MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class RandomStream:
    seed: int
    trial: int

    def __post_init__(self):
        if not (0 <= self.seed <= MAX_SEED):
            raise ConfigError(f"Seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.trial < 0:
            raise ConfigError(f"Trial index must be non-negative, got {self.trial}")

    def generator(self) -> np.random.Generator:
        counter = np.array([0, 0, 0, self.trial], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(counter=counter, key=self.seed))
