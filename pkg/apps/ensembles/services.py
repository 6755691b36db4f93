"""
Sampling and moment functionals for coefficient ensembles.
"""
import math
from typing import Tuple

from apps.core.exceptions import EnsembleError
from apps.polynomials.poly import ComplexPolynomial

from .interfaces import BaseEnsemble
from .streams import RandomStream


def sample_coefficients(ens: BaseEnsemble, n: int, stream: RandomStream):
    """Coefficient array for one trial; the stream fixes the draws completely."""
    if n < 1:
        raise EnsembleError(f"Degree must be at least 1, got {n}")
    return ens.sample_coefficients(n, stream.generator())


def sample_polynomial(ens: BaseEnsemble, n: int, stream: RandomStream) -> ComplexPolynomial:
    return ComplexPolynomial.from_array(sample_coefficients(ens, n, stream))


def moment_t(ens: BaseEnsemble, t: float) -> float:
    """E|C_0|^t, possibly infinite."""
    if not t > 0:
        raise EnsembleError(f"Moment order must be positive, got {t}")
    return ens.moment(t)


def expected_log_modulus(ens: BaseEnsemble) -> float:
    return ens.expected_log_modulus()


def noniid_moments(ens: BaseEnsemble) -> Tuple[float, float]:
    """(E|C_0|, Std|C_0|) for the exchangeable ensemble."""
    if ens.name != 'exchangeable':
        raise EnsembleError(f"noniid_moments needs the exchangeable ensemble, got {ens.spec}")
    mu = ens.moment(1.0)
    second = ens.moment(2.0)
    return mu, math.sqrt(max(second - mu * mu, 0.0))
