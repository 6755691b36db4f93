"""
Management command: expected number of zeros in a region.
"""
from apps.harness.cli import LabCommand
from apps.harness.pipeline import check, get_experiment_pipeline


class Command(LabCommand):
    help = 'Monte Carlo zero counts in an origin disk, a point disk or an inscribed polygon'
    default_degrees = '100,1000'
    default_trials = 200

    def run(self, options):
        config = self.build_config(options)
        records = get_experiment_pipeline().run_zero_count(config)
        self.emit(records, config.output)
        check(records)
