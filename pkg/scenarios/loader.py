import json
import logging
from pathlib import Path

from rest_framework.exceptions import ValidationError

from amplitudes.types import _setting
from common.exceptions import ConfigError
from scenarios.serializers import ScenarioSerializer
from scenarios.types import ScenarioConfig

logger = logging.getLogger('spdc_lab')


def read_json(path):
    """Parse a JSON file; syntax errors report line and column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}", details={'path': str(path)})
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                          details={'path': str(path), 'line': exc.lineno, 'column': exc.colno})


def parse_scenario(document) -> ScenarioConfig:
    """Validate a scenario document. Raises DRF ValidationError keyed by the offending field path."""
    if not isinstance(document, dict):
        raise ValidationError({'non_field_errors': ['A scenario must be a JSON object.']})
    serializer = ScenarioSerializer(data=document)
    serializer.is_valid(raise_exception=True)
    data = dict(serializer.validated_data)
    data['output_dir'] = Path(data['output_dir'] or _setting('SPDC_OUTPUT_DIR', 'output'))
    return ScenarioConfig(**data)


def load_scenario(path=None, setup=None, target=None, output_dir=None, output_format=None) -> ScenarioConfig:
    """
    Scenario from a JSON file (defaults when path is None) with command-line overrides applied
    to the document before validation.

    target is a preset name, a target document, or the path of a JSON target file.
    """
    document = read_json(path) if path else {}
    if not isinstance(document, dict):
        raise ConfigError(f"{path}: a scenario must be a JSON object", details={'path': str(path)})
    if setup is not None:
        document['setup'] = setup
    if target is not None:
        document['target'] = read_json(target) if str(target).endswith('.json') else target
    if output_dir is not None or output_format is not None:
        output = dict(document.get('output') or {})
        if output_dir is not None:
            output['directory'] = str(output_dir)
        if output_format is not None:
            output['format'] = output_format
        document['output'] = output

    scenario = parse_scenario(document)
    logger.info(f"Loaded scenario from {path or 'defaults'}: setup={scenario.setup.mode}, "
                f"window [{scenario.window.ell_min}, {scenario.window.ell_max}], "
                f"crystal={scenario.crystal.variant}, d={scenario.d}")
    return scenario


def save_scenario(scenario: ScenarioConfig, path):
    """Write the effective scenario; parse_scenario reads it back to an equal configuration."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(scenario.as_payload(), indent=2) + '\n')
    logger.info(f"Saved scenario to {path}")
    return path
