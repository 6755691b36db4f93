import cmath
import math

import numpy as np
from django.test import SimpleTestCase

from apps.core.exceptions import RegionError
from apps.measure.discrepancy import (
    annular_discrepancy,
    count,
    polygon_cover_violations,
    sector_discrepancy,
    tau,
)
from apps.measure.regions import (
    TWO_PI,
    AnnularSector,
    AnnulusComplement,
    ClosedOriginDisk,
    InscribedPolygon,
    PointDisk,
    Sector,
)
from apps.polynomials.poly import ComplexPolynomial
from apps.polynomials.rootfind import find_roots

FOURTH_ROOTS = find_roots(ComplexPolynomial((-1, 0, 0, 0, 1)))
SQUARE = InscribedPolygon((0.0, math.pi / 2, math.pi, 3 * math.pi / 2))


def roots_of_unity(n):
    return np.exp(2j * np.pi * np.arange(n) / n)


def scattered_roots(seed, n):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.2, 2.5, n) * np.exp(2j * np.pi * rng.random(n))


class TauTests(SimpleTestCase):

    def test_fourth_roots_in_sector(self):
        self.assertEqual(tau(FOURTH_ROOTS, Sector(math.pi / 4, 3 * math.pi / 4)), 0.25)

    def test_fourth_roots_in_point_disk(self):
        self.assertEqual(tau(FOURTH_ROOTS, PointDisk(1, 1)), 0.25)

    def test_empty_root_set_rejected(self):
        with self.assertRaises(RegionError):
            tau([], Sector(0.0, 1.0))

    def test_partition_of_the_plane(self):
        roots = scattered_roots(1, 200)
        for r in (0.3, 0.5, 0.9):
            with self.subTest(r=r):
                total = tau(roots, AnnularSector(r, 0.0, TWO_PI)) + tau(roots, AnnulusComplement(r))
                self.assertAlmostEqual(total, 1.0, places=14)

    def test_additivity_over_disjoint_sectors(self):
        roots = scattered_roots(2, 300)
        whole = tau(roots, Sector(0.5, 4.0))
        parts = tau(roots, Sector(0.5, 2.0)) + tau(roots, Sector(2.0, 4.0))
        self.assertAlmostEqual(whole, parts, places=14)

    def test_sector_decomposition(self):
        roots = scattered_roots(3, 300)
        r, alpha, beta = 0.6, 1.0, 4.0
        in_sector = Sector(alpha, beta).mask(roots)
        outside_annulus = AnnulusComplement(r).mask(roots)
        expected = (np.count_nonzero(in_sector) - np.count_nonzero(in_sector & outside_annulus)) / roots.size
        self.assertAlmostEqual(tau(roots, AnnularSector(r, alpha, beta)), expected, places=14)

    def test_monotone_in_r(self):
        roots = scattered_roots(4, 300)
        shares = [tau(roots, AnnularSector(r, 0.0, 3.0)) for r in (0.1, 0.3, 0.5, 0.7, 0.9)]
        for wider, narrower in zip(shares, shares[1:]):
            self.assertGreaterEqual(wider, narrower)

    def test_count_with_multiplicity(self):
        self.assertEqual(count([0.1, 0.1, 0.1, 3.0], ClosedOriginDisk(0.5)), 3)


class DiscrepancyTests(SimpleTestCase):

    def test_roots_of_unity_are_equidistributed(self):
        n = 60
        roots = roots_of_unity(n)
        for alpha, beta in ((0.0, 1.0), (0.3, 2.9), (1.0, TWO_PI)):
            with self.subTest(sector=(alpha, beta)):
                self.assertLessEqual(sector_discrepancy(roots, alpha, beta), 1.0 / n + 1e-12)

    def test_all_roots_at_origin(self):
        self.assertEqual(sector_discrepancy(np.zeros(7), 0.0, math.pi), 0.5)

    def test_full_turn_with_thin_annulus_boundary(self):
        roots = scattered_roots(5, 100)
        self.assertEqual(annular_discrepancy(roots, 0.01, 0.0, TWO_PI), 0.0)


class PolygonCoverTests(SimpleTestCase):

    def test_square_cover_with_pi(self):
        rng = np.random.default_rng(6)
        for n in (64, 256, 1024):
            coeffs = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
            roots = find_roots(ComplexPolynomial.from_array(coeffs))
            with self.subTest(n=n):
                self.assertEqual(polygon_cover_violations(roots, SQUARE, n, math.pi), 0)

    def test_small_constant_misses_points_near_a_vertex(self):
        n = 10 ** 4
        delta = math.sqrt(math.log(n) / n)
        z = (1 - 0.9 * delta) * cmath.exp(0.5j * delta)
        self.assertTrue(SQUARE.contains(z))
        self.assertEqual(polygon_cover_violations([z], SQUARE, n, 0.1), 1)
        self.assertEqual(polygon_cover_violations([z], SQUARE, n, math.pi), 0)
