import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals; nothing is signed or served.
SECRET_KEY = os.environ.get('SECRET_KEY', 'spdc-lab-local-key')

DEBUG = os.environ.get('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS: list[str] = []

# Application definition
INSTALLED_APPS = [
    # Project apps
    'common',
    'modes',
    'phasematching',
    'amplitudes',
    'entanglement',
    'engineering',
    'poling',
    'scenarios',
    'spdc_lab',
]

# No persistence: every result is recomputed from a scenario file.
DATABASES: dict = {}

USE_TZ = True
TIME_ZONE = 'UTC'

# Celery Configuration
CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'redis://localhost:6379/1')
CELERY_RESULT_BACKEND = os.environ.get('CELERY_RESULT_BACKEND', 'redis://localhost:6379/2')
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'UTC'
CELERY_TASK_TRACK_STARTED = True
CELERY_TASK_TIME_LIMIT = 30 * 60
CELERY_TASK_ALWAYS_EAGER = os.environ.get('CELERY_TASK_ALWAYS_EAGER', 'True').lower() == 'true'

# Amplitude dispatch: 'local' (joblib) or 'celery'
SPDC_TASK_BACKEND = os.environ.get('SPDC_TASK_BACKEND', 'local')
SPDC_N_JOBS = int(os.environ.get('SPDC_N_JOBS', '1'))

# Quadrature defaults
SPDC_RADIAL_NODES = int(os.environ.get('SPDC_RADIAL_NODES', '64'))
SPDC_AZIMUTHAL_NODES = int(os.environ.get('SPDC_AZIMUTHAL_NODES', '256'))
SPDC_QMAX_FACTOR = float(os.environ.get('SPDC_QMAX_FACTOR', '8.0'))
SPDC_QUAD_TOLERANCE = float(os.environ.get('SPDC_QUAD_TOLERANCE', '1e-6'))

# Command output
SPDC_OUTPUT_DIR = Path(os.environ.get('SPDC_OUTPUT_DIR', BASE_DIR / 'output'))

LOG_DIR = BASE_DIR / 'logs'
LOG_DIR.mkdir(exist_ok=True)
LOG_LEVEL = os.environ.get('SPDC_LOG_LEVEL', 'INFO')

# Logging Configuration
LOGGING = { # type: ignore
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': LOG_LEVEL,
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
        'file': {
            'level': LOG_LEVEL,
            'class': 'logging.FileHandler',
            'filename': os.path.join(LOG_DIR, 'spdc_lab.log'),
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'WARNING',
            'propagate': True,
        },
        'spdc_lab': {
            'handlers': ['console', 'file'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
