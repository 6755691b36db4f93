import math

import numpy as np
from django.test import SimpleTestCase
from scipy.stats import ks_2samp, kstest

from apps.core.constants import EULER_GAMMA
from apps.core.exceptions import ConfigError, EnsembleError
from apps.ensembles.providers.disk import DiskEnsemble
from apps.ensembles.providers.exchangeable import ExchangeableEnsemble
from apps.ensembles.providers.gaussian import GaussianEnsemble
from apps.ensembles.providers.pareto import ParetoEnsemble
from apps.ensembles.providers.unimodular import UnimodularEnsemble
from apps.ensembles.services import (
    expected_log_modulus,
    moment_t,
    noniid_moments,
    sample_coefficients,
    sample_polynomial,
)
from apps.ensembles.streams import RandomStream

DRAWS = 100_000


def moduli(ensemble, seed=1):
    return np.abs(sample_coefficients(ensemble, DRAWS - 1, RandomStream(seed, 0)))


def first_coefficients(ensemble, trials, seed=3):
    return np.array([sample_coefficients(ensemble, 8, RandomStream(seed, k)) for k in range(trials)])


class SamplerTests(SimpleTestCase):

    def test_unimodular_has_unit_modulus(self):
        np.testing.assert_allclose(moduli(UnimodularEnsemble()), 1.0, atol=1e-12)

    def test_pareto_moduli_are_at_least_one(self):
        self.assertTrue(np.all(moduli(ParetoEnsemble(alpha=2.0)) >= 1.0))

    def test_gaussian_second_moment(self):
        self.assertAlmostEqual(float(np.mean(moduli(GaussianEnsemble()) ** 2)), 1.0, delta=0.02)

    def test_disk_stays_inside(self):
        self.assertTrue(np.all(moduli(DiskEnsemble(K=2.0)) <= 2.0))

    def test_modulus_laws_match_their_cdfs(self):
        for ensemble in (GaussianEnsemble(), ParetoEnsemble(alpha=3.0), DiskEnsemble(K=1.0)):
            with self.subTest(ensemble=ensemble.spec):
                statistic = kstest(moduli(ensemble), ensemble.modulus_cdf).statistic
                self.assertLessEqual(statistic, 0.01)

    def test_phases_are_uniform(self):
        phases = np.angle(sample_coefficients(GaussianEnsemble(), DRAWS - 1, RandomStream(2, 0)))
        statistic = kstest(phases, 'uniform', args=(-math.pi, 2 * math.pi)).statistic
        self.assertLessEqual(statistic, 0.01)

    def test_streams_fix_the_draws(self):
        ensemble = GaussianEnsemble()
        first = sample_coefficients(ensemble, 16, RandomStream(7, 3))
        np.testing.assert_array_equal(first, sample_coefficients(ensemble, 16, RandomStream(7, 3)))
        self.assertFalse(np.array_equal(first, sample_coefficients(ensemble, 16, RandomStream(7, 4))))
        self.assertFalse(np.array_equal(first, sample_coefficients(ensemble, 16, RandomStream(8, 3))))

    def test_polynomial_has_requested_degree(self):
        P = sample_polynomial(ParetoEnsemble(alpha=2.0), 12, RandomStream(0, 0))
        self.assertEqual(P.degree, 12)

    def test_degree_must_be_positive(self):
        with self.assertRaises(EnsembleError):
            sample_coefficients(GaussianEnsemble(), 0, RandomStream(0, 0))

    def test_stream_validation(self):
        for seed, trial in ((-1, 0), (2 ** 64, 0), (0, -1)):
            with self.subTest(seed=seed, trial=trial), self.assertRaises(ConfigError):
                RandomStream(seed, trial)
        RandomStream(2 ** 64 - 1, 0).generator().random()


class MomentTests(SimpleTestCase):

    def test_gaussian(self):
        ensemble = GaussianEnsemble()
        self.assertAlmostEqual(moment_t(ensemble, 2.0), 1.0)
        self.assertAlmostEqual(moment_t(ensemble, 1.0), math.sqrt(math.pi) / 2)
        self.assertAlmostEqual(expected_log_modulus(ensemble), -EULER_GAMMA / 2)

    def test_pareto(self):
        ensemble = ParetoEnsemble(alpha=2.0)
        self.assertAlmostEqual(expected_log_modulus(ensemble), 1.0)
        self.assertAlmostEqual(moment_t(ensemble, 0.5), 2.0)
        self.assertEqual(moment_t(ensemble, 1.0), math.inf)

    def test_disk(self):
        ensemble = DiskEnsemble(K=1.0)
        self.assertAlmostEqual(moment_t(ensemble, 2.0), 0.5)
        self.assertAlmostEqual(expected_log_modulus(ensemble), -0.5)

    def test_unimodular(self):
        self.assertEqual(moment_t(UnimodularEnsemble(), 3.0), 1.0)
        self.assertEqual(expected_log_modulus(UnimodularEnsemble()), 0.0)

    def test_exchangeable_matches_closed_forms(self):
        for s in (0.0, 1.0):
            ensemble = ExchangeableEnsemble(s=s)
            variance = 1 + s * s
            for t in (1.0, 2.0):
                with self.subTest(s=s, t=t):
                    expected = variance ** (t / 2) * math.gamma(t / 2 + 1)
                    self.assertAlmostEqual(moment_t(ensemble, t), expected, places=6)
            with self.subTest(s=s, t='log'):
                self.assertAlmostEqual(
                    expected_log_modulus(ensemble), -EULER_GAMMA / 2 + 0.5 * math.log(variance), places=6
                )

    def test_noniid_moments(self):
        mu, sigma = noniid_moments(ExchangeableEnsemble(s=0.0))
        self.assertAlmostEqual(mu, math.sqrt(math.pi) / 2, places=6)
        self.assertAlmostEqual(sigma, math.sqrt(1 - math.pi / 4), places=6)
        with self.assertRaises(EnsembleError):
            noniid_moments(GaussianEnsemble())

    def test_moment_order_must_be_positive(self):
        with self.assertRaises(EnsembleError):
            moment_t(GaussianEnsemble(), 0.0)

    def test_parameter_validation(self):
        for build in (lambda: ParetoEnsemble(alpha=1.0), lambda: DiskEnsemble(K=0.0), lambda: ExchangeableEnsemble(s=-1.0)):
            with self.assertRaises(EnsembleError):
                build()


class ExchangeableTests(SimpleTestCase):

    def test_moduli_share_one_law(self):
        coeffs = np.abs(first_coefficients(ExchangeableEnsemble(s=1.0), 4000))
        self.assertGreater(ks_2samp(coeffs[:, 0], coeffs[:, 5]).pvalue, 1e-4)

    def test_marginal_matches_scaled_gaussian(self):
        ensemble = ExchangeableEnsemble(s=1.0)
        coeffs = np.abs(first_coefficients(ensemble, 20000, seed=4))
        self.assertLessEqual(kstest(coeffs[:, 0], ensemble.modulus_cdf).statistic, 0.02)

    def test_moduli_are_positively_correlated(self):
        coeffs = np.abs(first_coefficients(ExchangeableEnsemble(s=3.0), 4000))
        self.assertGreater(np.corrcoef(coeffs[:, 0], coeffs[:, 1])[0, 1], 0.3)
