"""
Simultaneous (Aberth-Ehrlich) root finding with residual certificates.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from apps.core.exceptions import RootFindingError

from .poly import ComplexPolynomial, from_roots

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200
GUESS_ANGLE_OFFSET = 0.4
POLISH_STEPS = 2


@dataclass(frozen=True)
class RootMultiset:
    """The roots of a polynomial with per-root relative residuals."""

    roots: Tuple[complex, ...]
    residuals: Tuple[float, ...]
    converged: bool
    iterations: int = 0

    def __len__(self):
        return len(self.roots)

    @property
    def worst_residual(self) -> float:
        return max(self.residuals, default=0.0)

    def as_array(self) -> np.ndarray:
        return np.array(self.roots, dtype=complex)


def _strip(P: ComplexPolynomial) -> Tuple[np.ndarray, int]:
    """Drop vanishing top coefficients and factor out z^k; returns (coeffs, zero_roots)."""
    coeffs = P.array
    nonzero = np.flatnonzero(coeffs)
    if nonzero.size == 0:
        raise RootFindingError("The zero polynomial has no finite root set")
    low, high = int(nonzero[0]), int(nonzero[-1])
    return np.array(coeffs[low:high + 1]), low


def initial_guesses(P: ComplexPolynomial) -> np.ndarray:
    """
    n points at angles 2*pi*k/n + 0.4 on a circle near the unit circle.

    The radius is the geometric mean root modulus |c_0/c_n|^(1/n), which lies
    between the smallest and largest root modulus. With c_0 = 0 the Cauchy
    radius 1 + max|c_k/c_n| is halved until it is at most 2.
    """
    coeffs = P.array
    n = len(coeffs) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    if coeffs[-1] == 0:
        raise RootFindingError("initial_guesses needs a non-zero leading coefficient")
    abs_coeffs = np.abs(coeffs)
    if abs_coeffs[0] > 0.0:
        radius = math.exp((math.log(abs_coeffs[0]) - math.log(abs_coeffs[-1])) / n)
    else:
        radius = 1.0 + float(np.max(abs_coeffs[:-1] / abs_coeffs[-1]))
        while radius > 2.0:
            radius /= 2.0
    angles = 2.0 * np.pi * np.arange(n) / n + GUESS_ANGLE_OFFSET
    return radius * np.exp(1j * angles)


def _horner_with_derivative(coeffs: np.ndarray, z: np.ndarray):
    """p(z) and p'(z) for ascending coefficients, vectorised over z."""
    p = np.full(z.shape, coeffs[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _newton_ratio(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """
    p(z)/p'(z). Outside the unit disk the reversed polynomial in w = 1/z is
    used so that |z|^n never has to be formed.
    """
    n = len(coeffs) - 1
    ratio = np.empty(z.shape, dtype=complex)
    inside = np.abs(z) <= 1.0

    if inside.any():
        p, dp = _horner_with_derivative(coeffs, z[inside])
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio[inside] = p / dp

    outside = ~inside
    if outside.any():
        w = 1.0 / z[outside]
        q, dq = _horner_with_derivative(coeffs[::-1], w)
        # p'/p = w * (n - w q'(w)/q(w))
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio[outside] = 1.0 / (w * (n - w * dq / q))
    return ratio


def relative_residuals(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """|p(z)| / sum_j |c_j| max(1,|z|)^j, evaluated without overflow."""
    abs_coeffs = np.abs(coeffs)
    residuals = np.empty(z.shape, dtype=float)
    inside = np.abs(z) <= 1.0

    if inside.any():
        p, _ = _horner_with_derivative(coeffs, z[inside])
        residuals[inside] = np.abs(p) / np.sum(abs_coeffs)

    outside = ~inside
    if outside.any():
        w = 1.0 / z[outside]
        q, _ = _horner_with_derivative(coeffs[::-1], w)
        scale, _ = _horner_with_derivative(abs_coeffs[::-1].astype(complex), np.abs(w).astype(complex))
        residuals[outside] = np.abs(q) / scale.real
    return residuals


def _aberth(coeffs: np.ndarray, z: np.ndarray, tol: float, max_iter: int) -> Tuple[np.ndarray, int]:
    n = len(z)
    active = np.ones(n, dtype=bool)
    iterations = 0
    for iterations in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        ratio = _newton_ratio(coeffs, z[idx])
        diff = z[idx, None] - z[None, :]
        diff[np.arange(idx.size), idx] = 1.0
        repulsion = np.sum(1.0 / diff, axis=1) - 1.0
        with np.errstate(divide='ignore', invalid='ignore'):
            step = ratio / (1.0 - ratio * repulsion)
        step[~np.isfinite(step)] = 0.0
        z[idx] -= step
        done = np.abs(step) <= tol * np.maximum(1.0, np.abs(z[idx]))
        active[idx[done]] = False
        if not active.any():
            break
    return z, iterations


def _polish(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    for _ in range(POLISH_STEPS):
        ratio = _newton_ratio(coeffs, z)
        candidate = z - np.where(np.isfinite(ratio), ratio, 0.0)
        better = relative_residuals(coeffs, candidate) < relative_residuals(coeffs, z)
        z = np.where(better, candidate, z)
    return z


def find_roots(
    P: ComplexPolynomial,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RootMultiset:
    """
    All roots of P. Vanishing top coefficients lower the degree; vanishing
    low coefficients are returned as exact zero roots. The remaining roots
    come from Aberth-Ehrlich iteration followed by Newton polishing.

    A result with converged=False is still returned; the caller decides.
    """
    coeffs, zero_roots = _strip(P)
    degree = len(coeffs) - 1

    if degree == 0:
        roots = np.zeros(zero_roots, dtype=complex)
        return RootMultiset(tuple(roots.tolist()), (0.0,) * zero_roots, True, 0)

    stripped = ComplexPolynomial.from_array(coeffs)
    z = initial_guesses(stripped).astype(complex)
    z, iterations = _aberth(coeffs, z, tol, max_iter)
    z = _polish(coeffs, z)

    residuals = relative_residuals(coeffs, z)
    converged = bool(np.all(residuals <= tol))
    if not converged:
        logger.warning(
            f"Root finder did not converge for degree {degree} after {iterations} "
            f"iterations (worst residual {float(np.max(residuals)):.3e})"
        )

    roots = np.concatenate([np.zeros(zero_roots, dtype=complex), z])
    all_residuals = np.concatenate([np.zeros(zero_roots), residuals])
    return RootMultiset(
        roots=tuple(roots.tolist()),
        residuals=tuple(float(r) for r in all_residuals),
        converged=converged,
        iterations=iterations,
    )


def reconstruction_error(P: ComplexPolynomial, roots: RootMultiset) -> float:
    """Relative l2 distance between P and c_n * prod (z - z_k)."""
    coeffs, _ = _strip(P)
    rebuilt = from_roots(coeffs[-1], roots.roots).array
    original = P.array[:len(rebuilt)]
    return float(np.linalg.norm(rebuilt - original) / math.sqrt(np.sum(np.abs(original) ** 2)))
