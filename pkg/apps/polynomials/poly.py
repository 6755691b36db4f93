"""
Dense complex polynomials and their norms on the unit circle.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.optimize import minimize_scalar

from apps.core.exceptions import NotAdmissibleError, PolynomialError

logger = logging.getLogger(__name__)

LOG_CLAMP = 1e-300
GRID_MIN_NODES = 4096
GRID_NODES_PER_DEGREE = 64
NODE_OFFSET = 0.25


@dataclass(frozen=True)
class ComplexPolynomial:
    """
    P(z) = sum_k coeffs[k] * z**k.

    Coefficients are stored densely; index k is the coefficient of z^k and
    the degree is the index of the last stored coefficient, zero or not.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise PolynomialError("A polynomial needs at least one coefficient")
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def from_array(cls, values: Union[np.ndarray, Iterable[complex]]) -> 'ComplexPolynomial':
        return cls(tuple(np.asarray(values, dtype=complex).tolist()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant(self) -> complex:
        return self.coeffs[0]

    @property
    def leading(self) -> complex:
        return self.coeffs[-1]

    @cached_property
    def array(self) -> np.ndarray:
        values = np.array(self.coeffs, dtype=complex)
        values.flags.writeable = False
        return values

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_admissible(self) -> bool:
        """True when c_0 * c_n != 0, the standing hypothesis of every discrepancy bound."""
        return self.constant != 0 and self.leading != 0

    def __call__(self, z):
        return evaluate(self, z)


@dataclass(frozen=True)
class CircleGrid:
    """
    Uniform angular grid theta_j = 2*pi*(j + 1/4)/N on the unit circle.

    The quarter-cell shift keeps roots of unity of any order dividing N off
    the nodes.
    """

    node_count: int

    def __post_init__(self):
        n = self.node_count
        if n < 8 or n & (n - 1):
            raise PolynomialError(f"Grid size must be a power of two >= 8, got {n}")

    @classmethod
    def for_degree(
        cls,
        degree: int,
        min_nodes: int = GRID_MIN_NODES,
        nodes_per_degree: int = GRID_NODES_PER_DEGREE,
    ) -> 'CircleGrid':
        """Smallest power of two >= max(min_nodes, nodes_per_degree * (degree + 1))."""
        needed = max(min_nodes, nodes_per_degree * (degree + 1), 8)
        return cls(1 << (needed - 1).bit_length())

    @cached_property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * (np.arange(self.node_count) + NODE_OFFSET) / self.node_count

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    @property
    def spacing(self) -> float:
        return 2.0 * math.pi / self.node_count


def _require_admissible(P: ComplexPolynomial):
    if not P.is_admissible():
        raise NotAdmissibleError(
            f"Polynomial of degree {P.degree} has c_0 * c_n = 0"
        )


def _require_nonzero(P: ComplexPolynomial):
    if P.is_zero():
        raise PolynomialError("The zero polynomial has no Mahler measure")


def evaluate(P: ComplexPolynomial, z):
    """Horner evaluation; z may be a scalar or a numpy array."""
    z = np.asarray(z, dtype=complex)
    value = np.full(z.shape, P.coeffs[-1], dtype=complex)
    for c in reversed(P.coeffs[:-1]):
        value = value * z + c
    return complex(value) if value.ndim == 0 else value


@lru_cache(maxsize=16)
def _circle_moduli(P: ComplexPolynomial, grid: CircleGrid) -> np.ndarray:
    moduli = np.abs(evaluate(P, grid.nodes))
    moduli.flags.writeable = False
    return moduli


def l2_norm(P: ComplexPolynomial) -> float:
    """||P||_2 from the coefficients (Parseval)."""
    return float(np.sqrt(np.sum(np.abs(P.array) ** 2)))


def lp_norm(P: ComplexPolynomial, p: float, grid: CircleGrid) -> float:
    """Trapezoidal approximation of (1/2pi int |P(e^it)|^p dt)^(1/p)."""
    if not p > 0:
        raise PolynomialError(f"lp_norm needs p > 0, got {p}")
    moduli = _circle_moduli(P, grid)
    return float(np.mean(moduli ** p) ** (1.0 / p))


def sup_norm(P: ComplexPolynomial, grid: CircleGrid) -> float:
    """
    max |P| over the grid followed by a bounded scalar refinement in the two
    cells adjacent to the best node. The result is a value of |P| actually
    attained on the circle, so it never exceeds the true supremum.
    """
    moduli = _circle_moduli(P, grid)
    best = int(np.argmax(moduli))
    grid_max = float(moduli[best])
    if P.degree == 0:
        return grid_max

    theta = grid.angles[best]
    result = minimize_scalar(
        lambda t: -abs(evaluate(P, np.exp(1j * t))),
        bounds=(theta - grid.spacing, theta + grid.spacing),
        method='bounded',
        options={'xatol': 1e-12},
    )
    return max(grid_max, float(-result.fun))


def mahler_from_roots(leading: complex, roots) -> float:
    """
    |c_n| * prod max(1, |z_k|), the exact Mahler measure by Jensen's formula.

    ``roots`` is a RootMultiset or any sequence of complex numbers.
    """
    if leading == 0:
        raise PolynomialError("Leading coefficient must be non-zero")
    values = np.asarray(getattr(roots, 'roots', roots), dtype=complex)
    log_m = math.log(abs(leading)) + float(np.sum(np.log(np.maximum(1.0, np.abs(values)))))
    return math.exp(log_m)


def log_mahler_from_roots(leading: complex, roots) -> float:
    """log of mahler_from_roots without the round trip through exp."""
    if leading == 0:
        raise PolynomialError("Leading coefficient must be non-zero")
    values = np.asarray(getattr(roots, 'roots', roots), dtype=complex)
    return math.log(abs(leading)) + float(np.sum(np.log(np.maximum(1.0, np.abs(values)))))


def log_mahler(P: ComplexPolynomial, grid: CircleGrid, clamp: float = LOG_CLAMP) -> float:
    """m(P): trapezoidal mean of log|P| on the grid; nodes below ``clamp`` contribute log(clamp)."""
    _require_nonzero(P)
    moduli = _circle_moduli(P, grid)
    clamped = int(np.count_nonzero(moduli < clamp))
    if clamped:
        logger.debug(f"log_mahler clamped {clamped} grid node(s) below {clamp:g}")
    return float(np.mean(np.log(np.maximum(moduli, clamp))))


def log_mahler_plus(P: ComplexPolynomial, grid: CircleGrid) -> float:
    """m+(P): trapezoidal mean of log+|P| on the grid."""
    _require_nonzero(P)
    moduli = _circle_moduli(P, grid)
    return float(np.mean(np.log(np.maximum(moduli, 1.0))))


def normalize(P: ComplexPolynomial) -> ComplexPolynomial:
    """P / sqrt(|c_0 c_n|)."""
    _require_admissible(P)
    scale = math.sqrt(abs(P.constant) * abs(P.leading))
    return ComplexPolynomial.from_array(P.array / scale)


def reciprocal(P: ComplexPolynomial) -> ComplexPolynomial:
    """P*(z) = z^n conj(P(1/conj z)): coefficients reversed and conjugated."""
    return ComplexPolynomial.from_array(np.conj(P.array[::-1]))


def from_roots(leading: complex, roots: Sequence[complex]) -> ComplexPolynomial:
    """Expand leading * prod (z - z_k) into coefficients c_0..c_n."""
    coeffs = np.array([leading], dtype=complex)
    for root in roots:
        shifted = np.zeros(len(coeffs) + 1, dtype=complex)
        shifted[1:] = coeffs
        shifted[:-1] -= root * coeffs
        coeffs = shifted
    return ComplexPolynomial.from_array(coeffs)
