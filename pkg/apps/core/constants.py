"""
Certified numeric constants.

Values are stored as literals; each carries an oracle that recomputes it from
its defining series or limit so a transcription error is caught by the test
suite rather than at runtime.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from .exceptions import UnknownConstantError

CATALAN = 0.91596559417721901505
EULER_GAMMA = 0.57721566490153286061


def catalan_partial_sums(terms: int) -> List[float]:
    """Partial sums S_0..S_{terms-1} of sum_k (-1)^k / (2k+1)^2."""
    sums = []
    total = 0.0
    for k in range(terms):
        total += (-1) ** k / (2 * k + 1) ** 2
        sums.append(total)
    return sums


def catalan_oracle(terms: int = 60) -> float:
    """
    Catalan's constant from its alternating series, accelerated by repeated
    averaging of neighbouring partial sums (Euler transform).
    """
    sums = catalan_partial_sums(terms)
    while len(sums) > 1:
        sums = [(a + b) / 2.0 for a, b in zip(sums, sums[1:])]
    return sums[0]


def euler_gamma_oracle(n: int = 10_000) -> float:
    """
    Euler's constant as H_n - log n with Euler-Maclaurin corrections.

    The remaining error is of order 1/(252 n^6).
    """
    h = math.fsum(1.0 / k for k in range(1, n + 1))
    return h - math.log(n) - 1.0 / (2 * n) + 1.0 / (12 * n ** 2) - 1.0 / (120 * n ** 4)


def ganelius_factor_oracle() -> float:
    return math.sqrt(2.0 * math.pi / catalan_oracle())


@dataclass(frozen=True)
class CertifiedConstant:
    """A constant together with the independent computation that certifies it."""

    name: str
    value: float
    oracle: str
    compute: Callable[[], float] = field(repr=False, compare=False)

    def verify(self, tolerance: float = 1e-10) -> bool:
        """Re-run the oracle and compare it with the stored literal."""
        return abs(self.compute() - self.value) <= tolerance


_REGISTRY: Dict[str, CertifiedConstant] = {
    'catalan': CertifiedConstant(
        name='catalan',
        value=CATALAN,
        oracle='alternating series sum (-1)^k/(2k+1)^2 with Euler transform acceleration',
        compute=catalan_oracle,
    ),
    'euler_gamma': CertifiedConstant(
        name='euler_gamma',
        value=EULER_GAMMA,
        oracle='H_n - log n with Euler-Maclaurin corrections at n = 10^4',
        compute=euler_gamma_oracle,
    ),
    'ganelius_factor': CertifiedConstant(
        name='ganelius_factor',
        value=math.sqrt(2.0 * math.pi / CATALAN),
        oracle='sqrt(2*pi / catalan) from the catalan oracle',
        compute=ganelius_factor_oracle,
    ),
}


def get(name: str) -> CertifiedConstant:
    """Look up a certified constant by name."""
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownConstantError(
            f"Unknown constant '{name}'; expected one of {sorted(_REGISTRY)}"
        ) from None


def names() -> List[str]:
    return sorted(_REGISTRY)
