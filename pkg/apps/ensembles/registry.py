"""
Ensemble lookup by spec string: ``gaussian``, ``pareto:alpha=2``,
``unimodular``, ``disk:K=1``, ``exchangeable:s=1``.
"""
from typing import Dict, Type

from apps.core.exceptions import EnsembleError

from .interfaces import BaseEnsemble
from .providers.disk import DiskEnsemble
from .providers.exchangeable import ExchangeableEnsemble
from .providers.gaussian import GaussianEnsemble
from .providers.pareto import ParetoEnsemble
from .providers.unimodular import UnimodularEnsemble

PROVIDERS: Dict[str, Type[BaseEnsemble]] = {
    'gaussian': GaussianEnsemble,
    'pareto': ParetoEnsemble,
    'unimodular': UnimodularEnsemble,
    'disk': DiskEnsemble,
    'exchangeable': ExchangeableEnsemble,
}

PARAMETERS = {
    'gaussian': (),
    'pareto': ('alpha',),
    'unimodular': (),
    'disk': ('K',),
    'exchangeable': ('s',),
}


def get_ensemble(spec: str) -> BaseEnsemble:
    """Build an ensemble from its spec string."""
    name, _, raw_params = spec.strip().partition(':')
    name = name.strip().lower()
    if name not in PROVIDERS:
        raise EnsembleError(f"Unknown ensemble '{name}'; expected one of {sorted(PROVIDERS)}")

    params = {}
    for item in filter(None, (part.strip() for part in raw_params.split(','))):
        key, sep, value = item.partition('=')
        key = key.strip()
        if not sep or key not in PARAMETERS[name]:
            raise EnsembleError(f"Bad parameter '{item}' for ensemble '{name}'")
        try:
            params[key] = float(value)
        except ValueError:
            raise EnsembleError(f"Parameter '{key}' must be a number, got '{value}'") from None

    if name == 'pareto' and 'alpha' not in params:
        raise EnsembleError("The pareto ensemble needs alpha, e.g. pareto:alpha=2")
    return PROVIDERS[name](**params)
