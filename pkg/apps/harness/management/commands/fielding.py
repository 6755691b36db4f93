"""
Management command: mean log Mahler measure for unimodular coefficients.
"""
from apps.core.exceptions import ConfigError
from apps.harness.cli import LabCommand, parse_degrees
from apps.harness.pipeline import check, get_experiment_pipeline


class Command(LabCommand):
    help = 'E log M(P_n) for coefficients uniform on the circle vs (1/2) log(n + 1) - gamma / 2'
    default_ensemble = 'unimodular'
    default_degrees = '100'
    default_trials = 2000

    def run(self, options):
        if options['ensemble'] != 'unimodular':
            raise ConfigError(f"the Fielding check is defined for the unimodular ensemble, got {options['ensemble']}")
        pipeline = get_experiment_pipeline()
        records = [
            pipeline.run_fielding_check(n, options['trials'], options['seed'], workers=options['workers'])
            for n in parse_degrees(options['degrees'])
        ]
        self.emit(records, options['out'])
        check(records)
