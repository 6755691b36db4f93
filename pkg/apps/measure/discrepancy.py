"""
The empirical measure tau_n of a root set and its discrepancies.
"""
import math

import numpy as np

from apps.core.exceptions import RegionError

from .regions import AnnularSector, ClosedOriginDisk, InscribedPolygon, Region, Sector


def _root_array(roots) -> np.ndarray:
    values = np.asarray(getattr(roots, 'roots', roots), dtype=complex)
    if values.size == 0:
        raise RegionError("tau is undefined for an empty root set")
    return values


def count(roots, region: Region) -> int:
    """Number of roots in the region, with multiplicity."""
    return int(np.count_nonzero(region.mask(_root_array(roots))))


def tau(roots, region: Region) -> float:
    """tau_n(region) = #roots in region / n."""
    values = _root_array(roots)
    return int(np.count_nonzero(region.mask(values))) / values.size


def sector_discrepancy(roots, alpha: float, beta: float) -> float:
    """|tau_n(S(alpha, beta)) - (beta - alpha)/2pi|."""
    sector = Sector(alpha, beta)
    return abs(tau(roots, sector) - sector.arc_fraction)


def annular_discrepancy(roots, r: float, alpha: float, beta: float) -> float:
    """|tau_n(A_r(alpha, beta)) - (beta - alpha)/2pi|."""
    region = AnnularSector(r, alpha, beta)
    return abs(tau(roots, region) - region.arc_fraction)


def polygon_cover_violations(roots, polygon: InscribedPolygon, n: int, constant: float) -> int:
    """
    Roots inside the polygon that are neither in the closed disk of radius
    1 - sqrt(log n / n) nor within angular distance constant * sqrt(log n / n)
    of a vertex.
    """
    values = _root_array(roots)
    delta = math.sqrt(math.log(n) / n)
    inside = polygon.mask(values)
    if delta >= 1.0:
        return 0
    in_disk = ClosedOriginDisk(1.0 - delta).mask(values)
    near_vertex = polygon.angular_distance_to_vertex(values) <= constant * delta
    return int(np.count_nonzero(inside & ~in_disk & ~near_vertex))
