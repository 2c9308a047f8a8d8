"""
Fan-out of independent per-mode evaluations.

SPDC_TASK_BACKEND selects 'local' (joblib processes, SPDC_N_JOBS workers) or
'celery' (a group of compute_mode_entry tasks). Payloads are plain JSON so both
backends see the same inputs and results come back in submission order.
"""
import logging

from joblib import Parallel, delayed

from amplitudes.engine import evaluate_entry
from amplitudes.types import _setting
from common.exceptions import ConfigError

logger = logging.getLogger('spdc_lab')

LOCAL = 'local'
CELERY = 'celery'


def map_entries(payloads, backend=None, n_jobs=None):
    """Evaluate every payload; results keep the order of payloads."""
    payloads = list(payloads)
    if not payloads:
        return []
    backend = backend or _setting('SPDC_TASK_BACKEND', LOCAL)
    n_jobs = int(n_jobs if n_jobs is not None else _setting('SPDC_N_JOBS', 1))

    logger.info(f"Dispatching {len(payloads)} mode evaluations on backend={backend}")
    if backend == LOCAL:
        if n_jobs == 1:
            return [evaluate_entry(payload) for payload in payloads]
        return Parallel(n_jobs=n_jobs)(delayed(evaluate_entry)(payload) for payload in payloads)
    if backend == CELERY:
        from celery import current_app, group

        from amplitudes.tasks import compute_mode_entry
        job = group(compute_mode_entry.s(payload) for payload in payloads)
        result = job.apply() if current_app.conf.task_always_eager else job.apply_async()
        return [child.get() for child in result.results]
    raise ConfigError(f"unknown task backend {backend!r}", details={'field': 'SPDC_TASK_BACKEND'})
