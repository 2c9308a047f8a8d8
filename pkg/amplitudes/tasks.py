import logging

from celery import shared_task

from amplitudes.engine import evaluate_entry

logger = logging.getLogger('spdc_lab')


@shared_task
def compute_mode_entry(payload):
    """
    Evaluate one amplitude (or one cosine-basis row) on a worker.

    Errors propagate so the caller sees the NumericalError of the failing mode.
    """
    try:
        return evaluate_entry(payload)
    except Exception as e:
        logger.error(f"Error computing mode ({payload.get('ell_s')},{payload.get('ell_i')}): {str(e)}",
                     exc_info=True)
        raise
