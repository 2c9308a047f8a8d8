from common.exceptions import ConfigError
from engineering.pipeline import pipeline, source_report
from modes.beams import render_pump_profile
from modes.types import PositionGrid
from scenarios.exporters import (PROFILE_EXTENT, PROFILE_SAMPLES, pmf_comparison, profile_table, write_report,
                                 write_spectrum, write_table)
from spdc_lab.management.base import ScenarioCommand


class Command(ScenarioCommand):
    help = 'Engineers pump and crystal for a target state and writes the report with spectrum, PMF and pump data'
    command_name = 'engineer'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--target', help='Target preset name (psi1, psi3, ...) or target JSON file')
        parser.add_argument('--pump-only', action='store_true', dest='pump_only',
                            help='Keep the periodic crystal and engineer the pump only')

    def scenario_overrides(self, options):
        return {'target': options.get('target')}

    def run(self, scenario, options):
        if scenario.target is None:
            raise ConfigError("no target given: pass --target or set target in the scenario",
                              details={'target': None})
        engineer_crystal = scenario.engineer_crystal and not options.get('pump_only')
        source = pipeline(scenario.target, scenario.setup, scenario.quad, N=scenario.N,
                          engineer_crystal=engineer_crystal, window=scenario.window)

        report = source_report(source)
        report['scenario'] = scenario.as_payload()
        fmt = scenario.output_format
        grid = PositionGrid(extent=PROFILE_EXTENT * source.pump.w_p, samples=PROFILE_SAMPLES)
        paths = [
            write_report(report, scenario.output_dir, 'engineer_report'),
            write_spectrum(source.achieved, scenario.output_dir, fmt),
            write_table(pmf_comparison(source.crystal), scenario.output_dir, 'pmf', fmt),
            write_table(profile_table(render_pump_profile(source.pump, grid)), scenario.output_dir,
                        'pump_profile', fmt),
        ]
        self.report_written(*paths)
        self.stdout.write(f"K_{source.target.d}x{source.target.d} = {source.schmidt.K:.6f}  "
                          f"is_mes = {source.mes.is_mes}")
