import logging

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from common.exceptions import SpdcError
from common.runlog import CommandRunLog
from common.utils import dump_json, error_payload, exit_code_for
from scenarios.loader import load_scenario, save_scenario
from scenarios.presets import SETUPS
from scenarios.types import OUTPUT_FORMATS

logger = logging.getLogger('spdc_lab')


def flatten_errors(detail, prefix=''):
    """DRF error detail as 'key.path: message' lines."""
    if isinstance(detail, dict):
        lines = []
        for key, value in detail.items():
            lines += flatten_errors(value, f"{prefix}.{key}" if prefix else str(key))
        return lines
    if isinstance(detail, list):
        if all(isinstance(item, str) for item in detail):
            return [f"{prefix or 'scenario'}: {item}" for item in detail]
        lines = []
        for index, item in enumerate(detail):
            if item:
                lines += flatten_errors(item, f"{prefix}[{index}]")
        return lines
    return [f"{prefix or 'scenario'}: {detail}"]


class ScenarioCommand(BaseCommand):
    """
    Base for the scenario-driven commands.

    Parses --config plus overrides into a ScenarioConfig, runs the command inside a
    CommandRunLog, prints failures as the error envelope on stderr and exits with the
    mapped code (2 config, 3 infeasible, 4 numerical).
    """
    command_name = ''

    def add_arguments(self, parser):
        parser.add_argument('--config', help='Scenario JSON file (defaults apply when omitted)')
        parser.add_argument('--setup', choices=sorted(SETUPS), help='Setup preset, replaces the scenario setup')
        parser.add_argument('--out', help='Output directory')
        parser.add_argument('--format', choices=OUTPUT_FORMATS, dest='output_format', help='Table format')
        parser.add_argument('--save-config', dest='save_config', help='Write the effective scenario JSON here')

    def scenario_overrides(self, options):
        return {}

    def handle(self, *args, **options):
        try:
            with CommandRunLog(self.command_name, self._loggable(options)):
                scenario = load_scenario(options.get('config'), setup=options.get('setup'),
                                         output_dir=options.get('out'), output_format=options.get('output_format'),
                                         **self.scenario_overrides(options))
                if options.get('save_config'):
                    save_scenario(scenario, options['save_config'])
                self.run(scenario, options)
        except (ValidationError, SpdcError) as exc:
            payload = error_payload(exc)
            self.stderr.write(dump_json(payload), ending='')
            if isinstance(exc, ValidationError):
                message = '; '.join(flatten_errors(exc.detail))
            else:
                message = payload['message']
            logger.error(f"{self.command_name} failed ({payload['code']}): {message}")
            raise CommandError(message, returncode=exit_code_for(exc))

    def run(self, scenario, options):
        raise NotImplementedError

    def report_written(self, *paths):
        for path in paths:
            self.stdout.write(self.style.SUCCESS(f"wrote {path}"))

    @staticmethod
    def _loggable(options):
        skip = {'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks',
                'stdout', 'stderr'}
        return {key: value for key, value in options.items() if key not in skip}
