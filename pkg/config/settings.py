"""
Django settings for the Rootlab project.
"""

import math
import os
from pathlib import Path

from decouple import config

# ------------------------------------------------------------------
# Base directory
# ------------------------------------------------------------------
BASE_DIR = Path(__file__).resolve().parent.parent


# ------------------------------------------------------------------
# Security
# ------------------------------------------------------------------
SECRET_KEY = config('SECRET_KEY', default='rootlab-local-only')
DEBUG = config('DEBUG', default=False, cast=bool)
ALLOWED_HOSTS = []


# ------------------------------------------------------------------
# Application definition
# ------------------------------------------------------------------
INSTALLED_APPS = [
    # Local apps
    'apps.core',
    'apps.polynomials',
    'apps.measure',
    'apps.bounds',
    'apps.ensembles',
    'apps.harness',
]


# ------------------------------------------------------------------
# Database
# ------------------------------------------------------------------
# Results are flat CSV files; nothing is stored in a database.
DATABASES = {}


# ------------------------------------------------------------------
# Internationalization
# ------------------------------------------------------------------
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True


# ------------------------------------------------------------------
# Logging
# ------------------------------------------------------------------
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'lab': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'lab',
        },
    },
    'loggers': {
        'apps': {
            'handlers': ['console'],
            'level': config('LAB_LOG_LEVEL', default='INFO'),
            'propagate': False,
        },
    },
}


# ------------------------------------------------------------------
# Laboratory configuration
# ------------------------------------------------------------------
LAB_CONFIG = {
    'SOLVER_TOL': config('LAB_SOLVER_TOL', default=1e-12, cast=float),
    'SOLVER_MAX_ITER': config('LAB_SOLVER_MAX_ITER', default=200, cast=int),
    'GRID_MIN_NODES': config('LAB_GRID_MIN_NODES', default=4096, cast=int),
    'GRID_NODES_PER_DEGREE': config('LAB_GRID_NODES_PER_DEGREE', default=64, cast=int),
    'BOUND_SLACK': config('LAB_BOUND_SLACK', default=1e-6, cast=float),
    'DISCARD_THRESHOLD': config('LAB_DISCARD_THRESHOLD', default=1e-3, cast=float),
    'WORKERS': config('LAB_WORKERS', default=1, cast=int),
    'POLYGON_CONSTANT': config('LAB_POLYGON_CONSTANT', default=math.pi, cast=float),
    'DEFAULT_SEED': config('LAB_DEFAULT_SEED', default=20120818, cast=int),
    'RESULTS_DIR': config('LAB_RESULTS_DIR', default=str(BASE_DIR / 'data' / 'results')),
}


# ------------------------------------------------------------------
# Ensure directories exist
# ------------------------------------------------------------------
os.makedirs(LAB_CONFIG['RESULTS_DIR'], exist_ok=True)
