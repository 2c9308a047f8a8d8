import json
import logging
import time

from django.utils import timezone

from common.utils import generate_run_id

logger = logging.getLogger('spdc_lab')


class CommandRunLog:
    """
    Context manager to log the start and finish of a command run.
    Also assigns a run_id so every log line of one run can be traced.
    """

    def __init__(self, command, options=None):
        self.command = command
        self.options = options or {}
        self.run_id = generate_run_id()
        self.start_time = None
        self.status = 'ok'

    def __enter__(self):
        self.start_time = time.time()
        self.log_start()
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None:
            self.status = getattr(exc, 'code', None) or exc_type.__name__
        self.log_finish(time.time() - self.start_time)
        return False

    def log_start(self):
        """Log command name and options"""
        log_data = {
            'timestamp': timezone.now().isoformat(),
            'run_id': self.run_id,
            'command': self.command,
            'options': {key: value for key, value in self.options.items() if value is not None},
        }
        logger.info(f"Run: {json.dumps(log_data, default=str)}")

    def log_finish(self, elapsed):
        """Log outcome and timing"""
        log_data = {
            'timestamp': timezone.now().isoformat(),
            'run_id': self.run_id,
            'command': self.command,
            'status': self.status,
            'elapsed': round(elapsed * 1000, 2),  # in milliseconds
        }
        logger.info(f"Finished: {json.dumps(log_data, default=str)}")
