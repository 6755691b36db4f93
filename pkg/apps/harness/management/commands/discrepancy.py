"""
Management command: expected annular discrepancy against its bound.
"""
from apps.harness.cli import LabCommand
from apps.harness.pipeline import check, decay_rate_summary, get_experiment_pipeline


class Command(LabCommand):
    help = 'Monte Carlo annular discrepancy per degree, with the expected-value bound'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--decay-check',
            action='store_true',
            help='Fail unless mean * sqrt(n / log(n + 1)) stays within a factor 3 across degrees',
        )

    def run(self, options):
        config = self.build_config(options)
        records = get_experiment_pipeline().run_discrepancy(config)
        self.emit(records, config.output)
        check(records)

        if options['decay_check']:
            summary = decay_rate_summary(records)
            for n, mean, scaled, scaled_bound in summary.rows:
                self.stderr.write(f'  n={n}: mean={mean:.6g} scaled={scaled:.6g} scaled bound={scaled_bound:.6g}')
            self.stderr.write(f'Decay ratio {summary.ratio:.3f} <= {summary.limit:g}', style_func=self.style.SUCCESS)
