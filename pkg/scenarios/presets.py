"""Named setups: the reference scenario (the default), the lab variant with 33 um collection waists and the idealized limit."""
from math import sqrt

from common.exceptions import ConfigError
from phasematching.types import SetupParams

LAMBDA_P = 405e-9
W_P = 25e-6
CRYSTAL_LENGTH = 15e-3

SETUPS = {
    # k_p w_p^2 / L = 1.10
    'reference': lambda: SetupParams.experimental(lambda_p=LAMBDA_P, w_p=W_P, w_s=sqrt(2) * W_P,
                                                  w_i=sqrt(2) * W_P, L=CRYSTAL_LENGTH, refractive_index=1.7),
    'lab': lambda: SetupParams.experimental(lambda_p=LAMBDA_P, w_p=W_P, w_s=33e-6, w_i=33e-6,
                                            L=CRYSTAL_LENGTH, refractive_index=1.8),
    'idealized': lambda: SetupParams.idealized(w_p=W_P, L=CRYSTAL_LENGTH, lambda_p=LAMBDA_P),
}

DEFAULT_SETUP = 'reference'


def setup_preset(name=DEFAULT_SETUP):
    try:
        return SETUPS[name]()
    except KeyError:
        raise ConfigError(f"unknown setup preset {name!r}", details={'setup': name, 'choices': sorted(SETUPS)})
