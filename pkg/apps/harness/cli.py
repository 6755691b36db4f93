"""
Shared plumbing for the lab's management commands: common flags, region
parsing, CSV output and the mapping of lab errors onto exit codes.
"""
import logging
import os
from contextlib import contextmanager
from typing import Iterable, Tuple

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import (
    BoundViolationError,
    ConfigError,
    LabError,
    SolverFailureError,
)
from apps.ensembles.registry import get_ensemble
from apps.measure.regions import AnnularSector, ClosedOriginDisk, InscribedPolygon, PointDisk, Region

from .records import ExperimentConfig, ExperimentRecord, write_csv

logger = logging.getLogger(__name__)

EXIT_CONFIG = 2
EXIT_VIOLATION = 3
EXIT_SOLVER = 4


def exit_code(error: LabError) -> int:
    if isinstance(error, BoundViolationError):
        return EXIT_VIOLATION
    if isinstance(error, SolverFailureError):
        return EXIT_SOLVER
    if isinstance(error, (ConfigError, ValueError, KeyError)):
        return EXIT_CONFIG
    return 1


def parse_degrees(raw: str) -> Tuple[int, ...]:
    try:
        degrees = tuple(int(item) for item in raw.split(',') if item.strip())
    except ValueError:
        raise ConfigError(f"--degrees must be a comma list of integers, got '{raw}'") from None
    if not degrees:
        raise ConfigError("--degrees is empty")
    return degrees


def _params(raw: str, spec: str) -> dict:
    params = {}
    for item in filter(None, (part.strip() for part in raw.split(','))):
        key, sep, value = item.partition('=')
        if not sep:
            raise ConfigError(f"Bad region parameter '{item}' in '{spec}'")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"Region parameter '{key}' must be a number in '{spec}'") from None
    return params


def parse_region(spec: str) -> Region:
    """
    Parse a region spec.

    Accepted forms::

        disk@<w>:r=<r>                 open disk around w on the unit circle
        origin-disk:r=<r>              closed disk around 0
        polygon:<theta_1>,...,<theta_m> inscribed polygon, vertex angles
        annular:r=<r>,alpha=<a>,beta=<b>
    """
    head, _, body = spec.strip().partition(':')
    try:
        if head.startswith('disk@'):
            centre = complex(head[len('disk@'):].replace(' ', ''))
            return PointDisk(centre, _params(body, spec)['r'])
        if head == 'origin-disk':
            return ClosedOriginDisk(_params(body, spec)['r'])
        if head == 'polygon':
            return InscribedPolygon(tuple(float(angle) for angle in body.split(',')))
        if head == 'annular':
            params = _params(body, spec)
            return AnnularSector(params['r'], params['alpha'], params['beta'])
    except KeyError as e:
        raise ConfigError(f"Region '{spec}' is missing parameter {e}") from None
    except ValueError as e:
        if isinstance(e, LabError):
            raise
        raise ConfigError(f"Cannot parse region '{spec}': {e}") from None
    raise ConfigError(f"Unknown region '{spec}'")


class LabCommand(BaseCommand):
    """Base class for experiment commands."""

    #: default ensemble spec when --ensemble is omitted
    default_ensemble = 'gaussian'
    default_degrees = '16,64,256'
    default_trials = 400

    def add_arguments(self, parser):
        lab = settings.LAB_CONFIG
        parser.add_argument('--ensemble', default=self.default_ensemble, help='Coefficient law, e.g. pareto:alpha=2')
        parser.add_argument('--degrees', default=self.default_degrees, help='Comma separated degrees')
        parser.add_argument('--trials', type=int, default=self.default_trials)
        parser.add_argument('--seed', type=int, default=lab['DEFAULT_SEED'])
        parser.add_argument('--r', type=float, default=0.5, help='Annulus parameter in (0, 1)')
        parser.add_argument('--alpha', type=float, default=0.0, help='Sector start (radians)')
        parser.add_argument('--beta', type=float, default=1.5707963267948966, help='Sector end (radians)')
        parser.add_argument('--t', type=float, default=2.0, help='Moment order')
        parser.add_argument('--tol', type=float, default=lab['SOLVER_TOL'])
        parser.add_argument('--max-iter', type=int, default=lab['SOLVER_MAX_ITER'])
        parser.add_argument('--region', default=None, help='e.g. disk@1:r=1, origin-disk:r=0.5, polygon:0,1.5708,3.1416,4.7124')
        parser.add_argument('--workers', type=int, default=lab['WORKERS'])
        parser.add_argument(
            '--out',
            default=None,
            help='CSV path (relative paths land in LAB_CONFIG RESULTS_DIR); stdout when omitted',
        )

    def build_config(self, options) -> ExperimentConfig:
        lab = settings.LAB_CONFIG
        return ExperimentConfig(
            ensemble=get_ensemble(options['ensemble']),
            degrees=parse_degrees(options['degrees']),
            trials=options['trials'],
            seed=options['seed'],
            region=parse_region(options['region']) if options['region'] else None,
            r=options['r'],
            alpha=options['alpha'],
            beta=options['beta'],
            t=options['t'],
            tol=options['tol'],
            max_iter=options['max_iter'],
            min_nodes=lab['GRID_MIN_NODES'],
            nodes_per_degree=lab['GRID_NODES_PER_DEGREE'],
            output=options['out'],
            workers=options['workers'],
        )

    @contextmanager
    def open_output(self, output=None):
        """
        Yield a text stream for CSV rows: stdout when output is None, else the
        file at output. Relative paths are resolved under RESULTS_DIR.
        """
        if output is None:
            yield self.stdout
            return
        path = output if os.path.isabs(output) else os.path.join(settings.LAB_CONFIG['RESULTS_DIR'], output)
        os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
        with open(path, 'w', newline='') as handle:
            yield handle
        self.stderr.write(f'Wrote {path}', style_func=self.style.SUCCESS)

    def emit(self, records: Iterable[ExperimentRecord], output=None):
        records = list(records)
        with self.open_output(output) as handle:
            write_csv(records, handle)

    def run(self, options):
        """Run the command body; subclasses implement it."""
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            self.run(options)
        except LabError as e:
            code = exit_code(e)
            logger.error(f"{type(e).__name__}: {e}")
            raise CommandError(str(e), returncode=code) from e
