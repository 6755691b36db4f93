"""
Management command: E log ||P_n||_2 against (1/2) log(n + 1) + E log max_k |C_k|.
"""
from apps.harness.cli import LabCommand
from apps.harness.pipeline import check, get_experiment_pipeline


class Command(LabCommand):
    help = 'Compare log ||P_n||_2 with the largest coefficient modulus'
    default_degrees = '10,100,1000'
    default_trials = 2000

    def run(self, options):
        config = self.build_config(options)
        records = get_experiment_pipeline().run_norm_comparison(config)
        self.emit(records, config.output)
        check(records)
