from poling.synthesis import GRID_HALF_WIDTH, GRID_SAMPLES
from scenarios.exporters import pmf_comparison, write_table
from spdc_lab.management.base import ScenarioCommand


class Command(ScenarioCommand):
    help = 'Samples the phase-matching function of the configured crystal against the periodic crystal'
    command_name = 'pmf'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--half-width', type=float, default=GRID_HALF_WIDTH, dest='half_width',
                            help='Grid spans dk L / 2 in [-half_width, half_width]')
        parser.add_argument('--samples', type=int, default=GRID_SAMPLES)

    def run(self, scenario, options):
        table = pmf_comparison(scenario.crystal, options['half_width'], options['samples'])
        path = write_table(table, scenario.output_dir, 'pmf', scenario.output_format)
        self.report_written(path)
