"""
Management command: E log max_k |C_k| against the moment bound and, where known, the exact value.
"""
from apps.harness.cli import LabCommand
from apps.harness.pipeline import get_experiment_pipeline


class Command(LabCommand):
    help = 'Order statistics of the coefficient moduli (no root finding)'
    default_degrees = '10,100,1000'
    default_trials = 10000

    def run(self, options):
        config = self.build_config(options)
        self.emit(get_experiment_pipeline().run_order_stats(config), config.output)
