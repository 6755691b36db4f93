"""
Management command: census of the per-realization inequalities.
"""
from apps.harness.cli import LabCommand
from apps.harness.pipeline import check, get_experiment_pipeline


class Command(LabCommand):
    help = 'Check every deterministic bound on a sample of polynomials; exit code 3 on any violation'
    default_degrees = '50'
    default_trials = 1000

    def run(self, options):
        config = self.build_config(options)
        records = get_experiment_pipeline().verify(config)
        self.emit(records, config.output)
        check(records)
        self.stderr.write(f'No violations in {len(records)} census rows', style_func=self.style.SUCCESS)
