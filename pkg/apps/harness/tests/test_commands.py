import math
import os
import tempfile
from io import StringIO

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from apps.core.exceptions import (
    BoundViolationError,
    ConfigError,
    EnsembleError,
    LabError,
    RootFindingError,
    ScalingCheckError,
    SolverFailureError,
    UnknownConstantError,
)
from apps.harness.cli import exit_code, parse_degrees, parse_region
from apps.harness.records import CSV_COLUMNS
from apps.measure.regions import AnnularSector, ClosedOriginDisk, InscribedPolygon, PointDisk

HEADER = ','.join(CSV_COLUMNS)


def run(name, **options):
    out, err = StringIO(), StringIO()
    call_command(name, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


class ParseTests(SimpleTestCase):

    def test_degrees(self):
        self.assertEqual(parse_degrees('16, 64,256'), (16, 64, 256))
        for raw in ('', 'a,b', '1.5'):
            with self.subTest(raw=raw), self.assertRaises(ConfigError):
                parse_degrees(raw)

    def test_regions(self):
        self.assertEqual(parse_region('disk@1:r=1'), PointDisk(1, 1.0))
        self.assertEqual(parse_region('disk@-1j:r=0.5'), PointDisk(-1j, 0.5))
        self.assertEqual(parse_region('origin-disk:r=0.5'), ClosedOriginDisk(0.5))
        self.assertEqual(parse_region('annular:r=0.5,alpha=0,beta=1.5'), AnnularSector(0.5, 0.0, 1.5))
        square = parse_region('polygon:0,1.5708,3.1416,4.7124')
        self.assertIsInstance(square, InscribedPolygon)
        self.assertEqual(len(square.angles), 4)

    def test_bad_regions(self):
        for spec in ('disk@1', 'origin-disk:r=x', 'polygon:0,1', 'annular:r=0.5', 'ellipse:a=1', 'disk@2:r=1', 'origin-disk:r'):
            with self.subTest(spec=spec), self.assertRaises(LabError):
                parse_region(spec)

    def test_exit_codes(self):
        self.assertEqual(exit_code(ConfigError('x')), 2)
        self.assertEqual(exit_code(EnsembleError('x')), 2)
        self.assertEqual(exit_code(UnknownConstantError('x')), 2)
        self.assertEqual(exit_code(BoundViolationError('x', violations=1)), 3)
        self.assertEqual(exit_code(SolverFailureError('x')), 4)
        self.assertEqual(exit_code(ScalingCheckError('x')), 1)
        self.assertEqual(exit_code(RootFindingError('x')), 1)


class DiscrepancyCommandTests(SimpleTestCase):

    def test_csv_on_stdout(self):
        out, _ = run('discrepancy', degrees='16', trials=4, seed=7)
        lines = out.splitlines()
        self.assertEqual(lines[0], HEADER)
        self.assertEqual([line.split(',')[0] for line in lines[1:]], ['discrepancy', 'discrepancy-exact'])
        self.assertTrue(lines[1].endswith(',7'))

    def test_repeat_run_is_identical(self):
        self.assertEqual(run('discrepancy', degrees='16', trials=4)[0], run('discrepancy', degrees='16', trials=4)[0])

    def test_decay_check(self):
        _, err = run('discrepancy', degrees='16,64,256', trials=20, decay_check=True)
        self.assertIn('Decay ratio', err)

    def test_bad_ensemble_is_a_config_error(self):
        with self.assertRaises(CommandError) as ctx:
            run('discrepancy', ensemble='cauchy')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_bad_region_is_a_config_error(self):
        with self.assertRaises(CommandError) as ctx:
            run('discrepancy', region='annular:r=2,alpha=0,beta=1', degrees='16', trials=1)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_solver_failure_exit_code(self):
        with self.assertLogs('apps', level='WARNING'), self.assertRaises(CommandError) as ctx:
            run('discrepancy', degrees='40', trials=2, max_iter=1)
        self.assertEqual(ctx.exception.returncode, 4)

    def test_output_file(self):
        stdout_csv, _ = run('discrepancy', degrees='16', trials=3)
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'run.csv')
            out, err = run('discrepancy', degrees='16', trials=3, out=path)
            self.assertEqual(out, '')
            self.assertIn(path, err)
            with open(path) as handle:
                self.assertEqual(handle.read(), stdout_csv)

    def test_relative_output_goes_to_results_dir(self):
        with tempfile.TemporaryDirectory() as directory:
            lab = dict(settings.LAB_CONFIG, RESULTS_DIR=directory)
            with override_settings(LAB_CONFIG=lab):
                run('discrepancy', degrees='16', trials=2, out='nested/run.csv')
            self.assertTrue(os.path.exists(os.path.join(directory, 'nested', 'run.csv')))


class OtherCommandTests(SimpleTestCase):

    def test_count(self):
        out, _ = run('count', degrees='32', trials=3, region='origin-disk:r=0.5')
        self.assertEqual(out.splitlines()[1].split(',')[0], 'count')

    def test_count_needs_region(self):
        with self.assertRaises(CommandError) as ctx:
            run('count', degrees='32', trials=3)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_orderstats(self):
        out, _ = run('orderstats', degrees='1,5', trials=50)
        kinds = [line.split(',')[0] for line in out.splitlines()[1:]]
        self.assertEqual(kinds, ['orderstats', 'orderstats-exact'] * 2)

    def test_comparison(self):
        out, _ = run('comparison', degrees='10', trials=20)
        self.assertEqual(len(out.splitlines()), 2)

    def test_fielding(self):
        out, _ = run('fielding', degrees='16', trials=5)
        self.assertTrue(out.splitlines()[1].startswith('fielding,unimodular,16,5,'))

    def test_fielding_rejects_other_ensembles_and_small_degrees(self):
        for options in (dict(ensemble='gaussian'), dict(degrees='8')):
            with self.subTest(**options), self.assertRaises(CommandError) as ctx:
                run('fielding', trials=2, **options)
            self.assertEqual(ctx.exception.returncode, 2)

    def test_verify(self):
        out, err = run('verify', degrees='12', trials=4)
        self.assertEqual(len(out.splitlines()), 6)
        self.assertIn('No violations', err)

    def test_sample(self):
        out, _ = run('sample', degrees='4', trials=2, first_trial=3)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'n,trial,kind,index,real,imag')
        self.assertEqual(len(lines), 1 + 2 * (5 + 4))
        self.assertEqual({line.split(',')[1] for line in lines[1:]}, {'3', '4'})

    def test_sample_output_file(self):
        stdout_csv, _ = run('sample', degrees='4', trials=2)
        with tempfile.TemporaryDirectory() as directory:
            lab = dict(settings.LAB_CONFIG, RESULTS_DIR=directory)
            with override_settings(LAB_CONFIG=lab):
                out, err = run('sample', degrees='4', trials=2, out='samples.csv')
            path = os.path.join(directory, 'samples.csv')
            self.assertEqual(out, '')
            self.assertIn(path, err)
            with open(path) as handle:
                self.assertEqual(handle.read(), stdout_csv)

    def test_bounds(self):
        out, _ = run('bounds', ensemble='pareto:alpha=2', degrees='64', t=0.5)
        values = {}
        for line in out.splitlines()[1:]:
            ensemble, n, name, value = line.split(',')
            values[name] = float(value)
        self.assertEqual(out.splitlines()[0], 'ensemble,n,name,value')
        self.assertAlmostEqual(values['exact_log_max'], sum(1 / k for k in range(1, 66)), places=12)
        self.assertTrue(math.isnan(values['noniid_bound']))
        self.assertTrue(math.isfinite(values['thm_main_bound']))
