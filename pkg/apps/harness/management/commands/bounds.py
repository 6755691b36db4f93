"""
Management command: print every bound and constant for one set of inputs.
"""
from apps.ensembles.registry import get_ensemble
from apps.harness.cli import LabCommand, parse_degrees
from apps.harness.pipeline import bound_table
from apps.harness.records import format_float


class Command(LabCommand):
    help = 'Evaluate all bounds at the given n, r, t for an ensemble'
    default_degrees = '64'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--d', type=float, default=0.5, help='Distance of the compact set from the circle')
        parser.add_argument('--disk-r', type=float, default=1.0, help='Radius of the disk centred on the circle')

    def run(self, options):
        ensemble = get_ensemble(options['ensemble'])
        self.stdout.write('ensemble,n,name,value')
        for n in parse_degrees(options['degrees']):
            table = bound_table(ensemble, n, options['r'], options['t'], options['d'], options['disk_r'])
            for name, value in table:
                self.stdout.write(f'{ensemble.spec},{n},{name},{format_float(value)}')
