import json
import logging
import math
import uuid

import numpy as np
from rest_framework.exceptions import ValidationError

from common.exceptions import SpdcError

logger = logging.getLogger('spdc_lab')

SIGNIFICANT_DIGITS = 12


def generate_run_id():
    """Generate a unique identifier for a command run."""
    return str(uuid.uuid4())


def error_payload(exc):
    """
    Render an exception into the error envelope.

    Returns a dict in the format:
    {
        "code": "error_code",
        "message": "Error message",
        "details": { additional error details }
    }
    """
    if isinstance(exc, ValidationError):
        return {
            'code': 'validation_error',
            'message': 'Validation failed',
            'details': exc.detail,
        }
    if isinstance(exc, SpdcError):
        return {
            'code': exc.code,
            'message': exc.message,
            'details': exc.details,
        }

    logger.exception("Unhandled exception", exc_info=exc)
    return {
        'code': 'server_error',
        'message': 'An unexpected error occurred',
        'details': {'error': str(exc)},
    }


def exit_code_for(exc):
    """Map an exception onto the command exit code."""
    if isinstance(exc, ValidationError):
        return 2
    if isinstance(exc, SpdcError):
        return exc.exit_code
    return 1


def round_sig(value, digits=SIGNIFICANT_DIGITS):
    """Round a float to a fixed number of significant digits."""
    value = float(value)
    if value == 0.0 or not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def to_jsonable(obj):
    """
    Convert numpy scalars/arrays, complex numbers and tuples into plain JSON types.

    Floats are rounded to SIGNIFICANT_DIGITS so reports are byte-identical across runs.
    """
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {'re': round_sig(obj.real), 'im': round_sig(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return round_sig(obj)
    return obj


def dump_json(obj):
    """Serialize with fixed field ordering and float formatting."""
    return json.dumps(to_jsonable(obj), indent=2) + "\n"
