"""
Experiment configuration, result records and CSV output.
"""
import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from apps.core.exceptions import ConfigError
from apps.ensembles.interfaces import BaseEnsemble
from apps.ensembles.streams import MAX_SEED
from apps.measure.regions import Region
from apps.polynomials.poly import GRID_MIN_NODES, GRID_NODES_PER_DEGREE, CircleGrid
from apps.polynomials.rootfind import DEFAULT_MAX_ITER, DEFAULT_TOL

CSV_COLUMNS = (
    'experiment', 'ensemble', 'n', 'trials', 'trials_used', 'discarded',
    'mean', 'stderr', 'bound', 'ratio', 'seed',
)

DEFAULT_SECTORS = ((0.0, math.pi / 2.0), (1.0, 4.0))
DEFAULT_RADII = (0.5, 0.9)
DEFAULT_POWERS = (1.0, 2.0)


@dataclass(frozen=True)
class ExperimentConfig:
    ensemble: BaseEnsemble
    degrees: Tuple[int, ...]
    trials: int
    seed: int
    region: Optional[Region] = None
    r: float = 0.5
    alpha: float = 0.0
    beta: float = math.pi / 2.0
    t: float = 2.0
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    min_nodes: int = GRID_MIN_NODES
    nodes_per_degree: int = GRID_NODES_PER_DEGREE
    output: Optional[str] = None
    workers: int = 1
    sectors: Tuple[Tuple[float, float], ...] = DEFAULT_SECTORS
    radii: Tuple[float, ...] = DEFAULT_RADII
    powers: Tuple[float, ...] = DEFAULT_POWERS

    def __post_init__(self):
        object.__setattr__(self, 'degrees', tuple(int(n) for n in self.degrees))
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if not self.degrees:
            raise ConfigError("at least one degree is required")
        if min(self.degrees) < 1:
            raise ConfigError(f"degrees must be positive, got {self.degrees}")
        if not (0 <= self.seed <= MAX_SEED):
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not (0.0 < self.r < 1.0):
            raise ConfigError(f"r must lie in (0, 1), got {self.r}")
        if not self.t > 0:
            raise ConfigError(f"t must be positive, got {self.t}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")

    def grid_for(self, n: int) -> CircleGrid:
        return CircleGrid.for_degree(n, self.min_nodes, self.nodes_per_degree)

    def require_root_degrees(self):
        if min(self.degrees) < 2:
            raise ConfigError(f"root-based experiments need degrees >= 2, got {self.degrees}")


@dataclass(frozen=True)
class TrialOutcome:
    """What one trial reports back to the reduction."""

    value: float
    converged: bool = True
    violations: int = 0


@dataclass
class ExperimentRecord:
    experiment: str
    ensemble: str
    n: int
    trials: int
    trials_used: int
    discarded: int
    mean: float
    stderr: float
    bound: float
    seed: int
    violations: int = 0
    flagged: bool = False

    @property
    def ratio(self) -> float:
        if self.bound == 0:
            return math.nan
        return self.mean / self.bound

    def as_row(self) -> List[str]:
        return [
            self.experiment,
            self.ensemble,
            str(self.n),
            str(self.trials),
            str(self.trials_used),
            str(self.discarded),
            format_float(self.mean),
            format_float(self.stderr),
            format_float(self.bound),
            format_float(self.ratio),
            str(self.seed),
        ]


def format_float(value: float) -> str:
    """17 significant digits: enough for a bit-exact round trip."""
    return format(float(value), '.17g')


def summarize(values: Sequence[float]) -> Tuple[float, float]:
    """(mean, sample std / sqrt(count)); reduction runs in trial order."""
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        return math.nan, math.nan
    mean = float(np.mean(data))
    if data.size < 2:
        return mean, 0.0
    return mean, float(np.std(data, ddof=1) / math.sqrt(data.size))


def build_record(
    experiment: str,
    config: ExperimentConfig,
    n: int,
    outcomes: Sequence[TrialOutcome],
    bound: float,
    discard_threshold: float,
) -> ExperimentRecord:
    used = [o.value for o in outcomes if o.converged]
    discarded = len(outcomes) - len(used)
    mean, stderr = summarize(used)
    return ExperimentRecord(
        experiment=experiment,
        ensemble=config.ensemble.spec,
        n=n,
        trials=len(outcomes),
        trials_used=len(used),
        discarded=discarded,
        mean=mean,
        stderr=stderr,
        bound=bound,
        seed=config.seed,
        violations=sum(o.violations for o in outcomes),
        flagged=discarded > discard_threshold * len(outcomes),
    )


def write_csv(records: Iterable[ExperimentRecord], stream: TextIO):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow(record.as_row())


@dataclass
class DecaySummary:
    """mean * sqrt(n / log(n + 1)) per degree, and its spread."""

    rows: List[Tuple[int, float, float, float]] = field(default_factory=list)
    ratio: float = math.nan
    limit: float = 3.0

    @property
    def passed(self) -> bool:
        return self.ratio <= self.limit
