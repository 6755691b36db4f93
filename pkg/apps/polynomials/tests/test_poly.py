import cmath
import math

import numpy as np
from django.test import SimpleTestCase

from apps.core.exceptions import NotAdmissibleError, PolynomialError
from apps.polynomials.poly import (
    CircleGrid,
    ComplexPolynomial,
    evaluate,
    from_roots,
    l2_norm,
    log_mahler,
    log_mahler_from_roots,
    log_mahler_plus,
    lp_norm,
    mahler_from_roots,
    normalize,
    reciprocal,
    sup_norm,
)
from apps.polynomials.rootfind import find_roots

GRID = CircleGrid(4096)


def poly(*coeffs):
    return ComplexPolynomial(coeffs)


def random_polynomial(rng, degree):
    return ComplexPolynomial.from_array(rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1))


class EvaluateTests(SimpleTestCase):

    def test_linear(self):
        self.assertEqual(evaluate(poly(1, 1), 1), 2)

    def test_monomial(self):
        z = 0.7 * cmath.exp(0.3j)
        self.assertAlmostEqual(evaluate(poly(0, 0, 0, 1), z), 0.343 * cmath.exp(0.9j), places=14)

    def test_square_of_one_plus_i(self):
        self.assertAlmostEqual(poly(1, 2, 1)(1j), 2j, places=14)

    def test_vectorised(self):
        values = evaluate(poly(1, 1), np.array([0.0, 1.0, -1.0]))
        np.testing.assert_allclose(values, [1, 2, 0])


class GridTests(SimpleTestCase):

    def test_node_policy(self):
        self.assertEqual(CircleGrid.for_degree(10).node_count, 4096)
        self.assertEqual(CircleGrid.for_degree(100).node_count, 8192)
        self.assertEqual(CircleGrid.for_degree(1024).node_count, 131072)

    def test_rejects_bad_sizes(self):
        for size in (4, 100, 0):
            with self.subTest(size=size), self.assertRaises(PolynomialError):
                CircleGrid(size)


class NormTests(SimpleTestCase):

    def test_l2_examples(self):
        self.assertEqual(l2_norm(poly(3, 4j)), 5.0)
        self.assertEqual(l2_norm(poly(0)), 0.0)

    def test_lp_of_constant_and_monomial(self):
        for p in (0.5, 1, 2, 4):
            with self.subTest(p=p):
                self.assertAlmostEqual(lp_norm(poly(-2.5j), p, GRID), 2.5, places=12)
                self.assertAlmostEqual(lp_norm(poly(0, 0, 0, 0, 1), p, GRID), 1.0, places=12)

    def test_lp2_of_one_plus_z(self):
        self.assertAlmostEqual(lp_norm(poly(1, 1), 2, GRID), math.sqrt(2), places=12)

    def test_lp_rejects_non_positive_p(self):
        with self.assertRaises(PolynomialError):
            lp_norm(poly(1, 1), 0, GRID)

    def test_parseval_matches_quadrature(self):
        rng = np.random.default_rng(7)
        for degree in (1, 5, 40):
            P = random_polynomial(rng, degree)
            self.assertLessEqual(abs(lp_norm(P, 2, GRID) - l2_norm(P)) / l2_norm(P), 1e-10)

    def test_sup_examples(self):
        self.assertAlmostEqual(sup_norm(poly(-3), GRID), 3.0)
        self.assertAlmostEqual(sup_norm(poly(1, 0, 0, 0, 0, 0, 1), GRID), 2.0, places=9)
        self.assertAlmostEqual(sup_norm(poly(1, 1, 1), GRID), 3.0, places=9)

    def test_sup_refinement_between_nodes(self):
        # maximum of |1 + e^{i(t - c)}| sits at t = c, off the grid
        shift = cmath.exp(-1j * 0.123456789)
        P = poly(1, shift)
        self.assertGreaterEqual(sup_norm(P, CircleGrid(8)), 2.0 - 1e-10)
        self.assertLessEqual(sup_norm(P, CircleGrid(8)), 2.0 + 1e-12)

    def test_norm_chain(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            P = random_polynomial(rng, int(rng.integers(1, 30)))
            M = math.exp(log_mahler(P, GRID))
            chain = [M, lp_norm(P, 0.5, GRID), lp_norm(P, 1, GRID), lp_norm(P, 2, GRID), sup_norm(P, GRID)]
            for low, high in zip(chain, chain[1:]):
                self.assertLessEqual(low, high * (1 + 1e-9) + 1e-9)
            self.assertLessEqual(log_mahler(P, GRID), log_mahler_plus(P, GRID) + 1e-12)
            self.assertLessEqual(log_mahler_plus(P, GRID), max(0.0, math.log(sup_norm(P, GRID))) + 1e-9)


class MahlerTests(SimpleTestCase):

    def test_roots_of_unity(self):
        roots = [cmath.exp(2j * math.pi * k / 7) for k in range(7)]
        self.assertAlmostEqual(mahler_from_roots(1, roots), 1.0, places=12)

    def test_monomial(self):
        self.assertAlmostEqual(mahler_from_roots(-4j, [0, 0, 0]), 4.0)

    def test_two_real_roots(self):
        self.assertAlmostEqual(mahler_from_roots(1, [2, 0.5]), 2.0)

    def test_rejects_zero_leading(self):
        with self.assertRaises(PolynomialError):
            mahler_from_roots(0, [1])

    def test_constants(self):
        self.assertAlmostEqual(log_mahler(poly(3), GRID), math.log(3))
        self.assertAlmostEqual(log_mahler_plus(poly(3), GRID), math.log(3))
        self.assertAlmostEqual(log_mahler(poly(0.25), GRID), math.log(0.25))
        self.assertEqual(log_mahler_plus(poly(0.25), GRID), 0.0)

    def test_z8_minus_one(self):
        P = poly(-1, 0, 0, 0, 0, 0, 0, 0, 1)
        self.assertLessEqual(abs(log_mahler(P, GRID)), 1e-3)

    def test_root_on_node_is_clamped(self):
        grid = CircleGrid(64)
        P = poly(-grid.nodes[0], 1)
        self.assertEqual(P(grid.nodes[0]), 0)
        value = log_mahler(P, grid, clamp=1e-300)
        self.assertTrue(math.isfinite(value))
        self.assertLess(value, math.log(1e-300) / 64 + 1.0)

    def test_zero_polynomial_rejected(self):
        with self.assertRaises(PolynomialError):
            log_mahler(poly(0, 0), GRID)
        with self.assertRaises(PolynomialError):
            log_mahler_plus(poly(0), GRID)

    def test_quadrature_agrees_with_root_product(self):
        rng = np.random.default_rng(2024)
        errors = []
        for _ in range(100):
            degree = int(rng.integers(2, 65))
            P = random_polynomial(rng, degree)
            grid = CircleGrid.for_degree(degree)
            roots = find_roots(P)
            errors.append(abs(log_mahler(P, grid) - log_mahler_from_roots(P.leading, roots)))
        self.assertLessEqual(float(np.median(errors)), 1e-3)


class ConstructionTests(SimpleTestCase):

    def test_normalize_examples(self):
        self.assertEqual(normalize(poly(2, 0, 2)), poly(1, 0, 1))
        self.assertEqual(normalize(poly(1, 1, 1, 1)), poly(1, 1, 1, 1))
        Q = normalize(poly(4, 1))
        self.assertAlmostEqual(Q.coeffs[0], 2)
        self.assertAlmostEqual(Q.coeffs[1], 0.5)
        self.assertAlmostEqual(abs(Q.constant) * abs(Q.leading), 1.0)

    def test_normalize_is_idempotent(self):
        Q = normalize(poly(3 + 1j, 2, -0.5j))
        for a, b in zip(normalize(Q).coeffs, Q.coeffs):
            self.assertAlmostEqual(a, b, places=14)

    def test_normalize_rejects_non_admissible(self):
        with self.assertRaises(NotAdmissibleError):
            normalize(poly(0, 1, 1))

    def test_reciprocal_examples(self):
        self.assertEqual(reciprocal(poly(1 + 2j, 3 - 1j)), poly(3 + 1j, 1 - 2j))
        self.assertEqual(reciprocal(poly(1, 0, 1)), poly(1, 0, 1))

    def test_reciprocal_properties(self):
        rng = np.random.default_rng(5)
        P = random_polynomial(rng, 12)
        R = reciprocal(P)
        self.assertAlmostEqual(l2_norm(R), l2_norm(P), places=12)
        self.assertEqual(reciprocal(R), P)
        z = np.exp(1j * np.linspace(0, 6, 13))
        np.testing.assert_allclose(np.abs(evaluate(R, z)), np.abs(evaluate(P, z)), rtol=1e-12)

    def test_from_roots(self):
        self.assertEqual(from_roots(2, [1, -1]), poly(-2, 0, 2))
