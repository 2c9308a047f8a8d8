from common.exceptions import ConfigError
from phasematching.types import COSINE
from poling.synthesis import pmf_error, synthesize
from scenarios.exporters import write_pattern, write_report
from scenarios.loader import read_json
from spdc_lab.management.base import ScenarioCommand


def read_coefficients(path):
    """
    Cosine coefficients from JSON: a bare list, {"c": [...], "sigma": ...}, or an engineer
    report, whose crystal section carries c and sigma.
    """
    document = read_json(path)
    if isinstance(document, dict) and isinstance(document.get('crystal'), dict):
        document = document['crystal']
    if isinstance(document, list):
        document = {'c': document}
    c = document.get('c') if isinstance(document, dict) else None
    if not c or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in c):
        raise ConfigError(f"{path}: expected a nonempty list of numbers under 'c'", details={'c': path})
    return [float(v) for v in c], document.get('sigma')


class Command(ScenarioCommand):
    help = 'Synthesizes a +1/-1 poling pattern for cosine coefficients and reports its PMF error'
    command_name = 'poling'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--coefficients', help='JSON file with c (defaults to the scenario cosine crystal)')
        parser.add_argument('--domains', type=int, help='Number of domains (defaults to the scenario poling.n_domains)')

    def run(self, scenario, options):
        if options.get('coefficients'):
            c, sigma = read_coefficients(options['coefficients'])
        elif scenario.crystal.variant == COSINE:
            c, sigma = list(scenario.crystal.c), scenario.crystal.sigma
        else:
            raise ConfigError("no coefficients given: pass --coefficients or configure a cosine crystal",
                              details={'c': None})
        sigma = scenario.setup.L / 4 if sigma is None else sigma
        n_domains = options.get('domains') or scenario.n_domains

        pattern = synthesize(c, sigma, scenario.setup.L, n_domains)
        error = pmf_error(pattern, c, sigma)
        report = {
            'c': c,
            'sigma': sigma,
            'L': pattern.L,
            'n_domains': pattern.n_domains,
            'domain_width': pattern.domain_width,
            'flips': len(pattern.flips),
            'pmf_error': error,
        }
        paths = [write_pattern(pattern, scenario.output_dir),
                 write_report(report, scenario.output_dir, 'poling_report')]
        self.report_written(*paths)
        self.stdout.write(f"{pattern.n_domains} domains, {len(pattern.flips)} flips, PMF error {error:.4f}")
