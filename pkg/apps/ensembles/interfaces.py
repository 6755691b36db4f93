"""
Abstract interface for pluggable coefficient laws.
"""
from abc import ABC, abstractmethod

import numpy as np


class BaseEnsemble(ABC):
    """A law for the coefficients C_0..C_n of a random polynomial."""

    #: short name used in ensemble specs and CSV output
    name: str = ''

    #: False when the coefficients are dependent
    is_iid: bool = True

    @property
    @abstractmethod
    def spec(self) -> str:
        """Round-trippable spec string, e.g. ``pareto:alpha=2``."""
        pass

    @abstractmethod
    def sample_coefficients(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """
        Draw n + 1 coefficients.

        Args:
            n: Polynomial degree
            rng: Generator positioned at the start of a trial's stream

        Returns:
            Complex array of length n + 1
        """
        pass

    @abstractmethod
    def modulus_cdf(self, r):
        """R_C(r) = P(|C_0| <= r), vectorised over r."""
        pass

    @abstractmethod
    def modulus_density(self, r):
        """rho_C(r) = R_C'(r), vectorised over r."""
        pass

    @abstractmethod
    def moment(self, t: float) -> float:
        """E|C_0|^t; ``math.inf`` when the moment diverges."""
        pass

    @abstractmethod
    def expected_log_modulus(self) -> float:
        """E log|C_0|."""
        pass

    def __str__(self):
        return self.spec


def uniform_phases(rng: np.random.Generator, size: int) -> np.ndarray:
    """e^{2 pi i V} for V uniform on [0, 1)."""
    return np.exp(2j * np.pi * rng.random(size))


def unit_interval_open_at_zero(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws on (0, 1]."""
    return 1.0 - rng.random(size)
