"""
Plane regions used to count roots.

Angles are radians; arg z is taken in [0, 2*pi) and arg 0 := 0.
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from apps.core.exceptions import RegionError

TWO_PI = 2.0 * math.pi


def arg(z) -> np.ndarray:
    """Argument in [0, 2*pi)."""
    angles = np.angle(np.asarray(z, dtype=complex))
    angles = np.where(angles < 0.0, angles + TWO_PI, angles)
    # -0.0 and tiny negative angles can round up to exactly 2*pi
    return np.where(angles >= TWO_PI, 0.0, angles)


def _check_sector(alpha: float, beta: float):
    if not (0.0 <= alpha < beta <= TWO_PI):
        raise RegionError(f"Sector needs 0 <= alpha < beta <= 2*pi, got ({alpha}, {beta})")


def _check_inner_radius(r: float):
    if not (0.0 < r < 1.0):
        raise RegionError(f"Annulus parameter must lie in (0, 1), got {r}")


class Region(ABC):
    """A subset of the complex plane with a vectorised membership test."""

    @abstractmethod
    def mask(self, z: np.ndarray) -> np.ndarray:
        """Boolean array: which of the points lie in the region."""

    def contains(self, z: complex) -> bool:
        return bool(self.mask(np.asarray([z], dtype=complex))[0])


@dataclass(frozen=True)
class Sector(Region):
    """alpha <= arg z < beta."""

    alpha: float
    beta: float

    def __post_init__(self):
        _check_sector(self.alpha, self.beta)

    @property
    def arc_fraction(self) -> float:
        return (self.beta - self.alpha) / TWO_PI

    def mask(self, z):
        theta = arg(z)
        return (theta >= self.alpha) & (theta < self.beta)


@dataclass(frozen=True)
class AnnularSector(Region):
    """r < |z| < 1/r and alpha <= arg z < beta."""

    r: float
    alpha: float
    beta: float

    def __post_init__(self):
        _check_inner_radius(self.r)
        _check_sector(self.alpha, self.beta)

    @property
    def arc_fraction(self) -> float:
        return (self.beta - self.alpha) / TWO_PI

    @property
    def sector(self) -> Sector:
        return Sector(self.alpha, self.beta)

    def mask(self, z):
        z = np.asarray(z, dtype=complex)
        modulus = np.abs(z)
        return (modulus > self.r) & (modulus < 1.0 / self.r) & self.sector.mask(z)


@dataclass(frozen=True)
class ClosedOriginDisk(Region):
    """|z| <= r."""

    r: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise RegionError(f"Disk radius must be positive, got {self.r}")

    @property
    def distance_to_circle(self) -> float:
        return abs(1.0 - self.r)

    def mask(self, z):
        return np.abs(np.asarray(z, dtype=complex)) <= self.r


@dataclass(frozen=True)
class AnnulusComplement(Region):
    """|z| <= r or |z| >= 1/r."""

    r: float

    def __post_init__(self):
        _check_inner_radius(self.r)

    def mask(self, z):
        modulus = np.abs(np.asarray(z, dtype=complex))
        return (modulus <= self.r) | (modulus >= 1.0 / self.r)


@dataclass(frozen=True)
class PointDisk(Region):
    """Open disk |z - w| < r centred on the unit circle."""

    w: complex
    r: float

    def __post_init__(self):
        object.__setattr__(self, 'w', complex(self.w))
        if not math.isclose(abs(self.w), 1.0, rel_tol=0.0, abs_tol=1e-12):
            raise RegionError(f"Disk centre must lie on the unit circle, got |w| = {abs(self.w)}")
        if not (0.0 < self.r < 2.0):
            raise RegionError(f"Disk radius must lie in (0, 2), got {self.r}")

    def mask(self, z):
        return np.abs(np.asarray(z, dtype=complex) - self.w) < self.r


@dataclass(frozen=True)
class InscribedPolygon(Region):
    """Convex polygon with vertices e^{i theta_j}; boundary included."""

    angles: Tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        object.__setattr__(self, 'angles', angles)
        if len(angles) < 3:
            raise RegionError(f"A polygon needs at least 3 vertices, got {len(angles)}")
        if any(b <= a for a, b in zip(angles, angles[1:])):
            raise RegionError("Polygon vertex angles must be strictly increasing")
        if angles[0] < 0.0 or angles[-1] - angles[0] >= TWO_PI:
            raise RegionError("Polygon vertex angles must lie in one turn starting at >= 0")

    @property
    def vertices(self) -> np.ndarray:
        return np.exp(1j * np.array(self.angles))

    def mask(self, z):
        z = np.asarray(z, dtype=complex)
        vertices = self.vertices
        inside = np.ones(z.shape, dtype=bool)
        for start, end in zip(vertices, np.roll(vertices, -1)):
            edge = end - start
            offset = z - start
            # counter-clockwise vertices: interior is to the left of every chord
            cross = edge.real * offset.imag - edge.imag * offset.real
            inside &= cross >= 0.0
        return inside

    def angular_distance_to_vertex(self, z) -> np.ndarray:
        """Smallest angular distance between arg z and a vertex angle."""
        theta = arg(z)[..., None]
        gap = np.abs(theta - np.mod(np.array(self.angles), TWO_PI))
        return np.min(np.minimum(gap, TWO_PI - gap), axis=-1)


def contains(region: Region, z: complex) -> bool:
    return region.contains(z)
