from modes.beams import render_pump_profile
from modes.types import PositionGrid
from scenarios.exporters import PROFILE_EXTENT, PROFILE_SAMPLES, profile_table, write_table
from spdc_lab.management.base import ScenarioCommand


class Command(ScenarioCommand):
    help = 'Renders the configured pump superposition on a position grid at the crystal centre'
    command_name = 'pump_profile'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--extent', type=float, default=PROFILE_EXTENT,
                            help='Grid side length in units of the pump waist')
        parser.add_argument('--samples', type=int, default=PROFILE_SAMPLES, help='Samples per side')

    def run(self, scenario, options):
        grid = PositionGrid(extent=options['extent'] * scenario.pump.w_p, samples=options['samples'])
        profile = render_pump_profile(scenario.pump, grid)
        path = write_table(profile_table(profile), scenario.output_dir, 'pump_profile', scenario.output_format)
        self.report_written(path)
