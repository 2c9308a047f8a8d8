from amplitudes.spectra import spectrum
from entanglement.schmidt import restrict, schmidt_report
from scenarios.exporters import write_report, write_spectrum
from spdc_lab.management.base import ScenarioCommand


class Command(ScenarioCommand):
    help = 'Computes the biphoton OAM spectrum of the configured pump and crystal plus its Schmidt report'
    command_name = 'spectrum'

    def run(self, scenario, options):
        matrix = spectrum(scenario.window, scenario.pump, scenario.crystal, scenario.setup, scenario.quad)
        analysis = schmidt_report(restrict(matrix, scenario.d))
        report = {
            'scenario': scenario.as_payload(),
            'd': scenario.d,
            'schmidt': analysis,
            'K': analysis['K'],
        }
        table = write_spectrum(matrix, scenario.output_dir, scenario.output_format)
        summary = write_report(report, scenario.output_dir, 'schmidt')
        self.report_written(table, summary)
        self.stdout.write(f"K_{scenario.d}x{scenario.d} = {analysis['K']:.6f}  is_mes = {analysis['is_mes']}")
