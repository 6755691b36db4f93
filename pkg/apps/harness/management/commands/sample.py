"""
Management command: emit sampled polynomials with their coefficients and roots.
"""
import csv

from apps.ensembles.services import sample_polynomial
from apps.ensembles.streams import RandomStream
from apps.harness.cli import LabCommand
from apps.harness.records import format_float
from apps.polynomials.rootfind import find_roots

SAMPLE_COLUMNS = ('n', 'trial', 'kind', 'index', 'real', 'imag')


class Command(LabCommand):
    help = 'Print the coefficients and roots of sampled polynomials as CSV'
    default_degrees = '16'
    default_trials = 1

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--first-trial', type=int, default=0, help='Index of the first trial to draw')

    def run(self, options):
        config = self.build_config(options)
        first = options['first_trial']
        with self.open_output(config.output) as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(SAMPLE_COLUMNS)
            for n in config.degrees:
                self.write_degree(writer, config, n, first)

    def write_degree(self, writer, config, n, first):
        for trial in range(first, first + config.trials):
            P = sample_polynomial(config.ensemble, n, RandomStream(config.seed, trial))
            for k, c in enumerate(P.coeffs):
                writer.writerow([n, trial, 'coeff', k, format_float(c.real), format_float(c.imag)])
            if not P.is_admissible():
                self.stderr.write(f'n={n} trial={trial}: c_0 c_n = 0, roots skipped', style_func=self.style.WARNING)
                continue
            roots = find_roots(P, tol=config.tol, max_iter=config.max_iter)
            for k, z in enumerate(roots.roots):
                writer.writerow([n, trial, 'root', k, format_float(z.real), format_float(z.imag)])
            if not roots.converged:
                self.stderr.write(
                    f'n={n} trial={trial}: solver did not converge (worst residual {roots.worst_residual:.3e})',
                    style_func=self.style.WARNING,
                )
