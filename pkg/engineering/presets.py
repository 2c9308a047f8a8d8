from common.exceptions import ConfigError
from engineering.classification import diagonal_modes
from engineering.types import TargetState


def psi_gaussian(d):
    """Every mode of S_{d x d} on l_p = 0 with equal weight: reachable with a Gaussian pump."""
    return TargetState.equal_weights(diagonal_modes(0, d), d, name=f'psi_gaussian_{d}')


TARGETS = {
    'psi1': lambda: TargetState.equal_weights([(-1, -1), (0, 0), (1, 1)], 3, name='psi1'),
    'psi2': lambda: TargetState.equal_weights([(-1, 0), (0, 1), (1, -1)], 3, name='psi2'),
    'psi3': lambda: TargetState.equal_weights([(-2, -1), (-1, -2), (0, 0), (1, 2), (2, 1)], 5, name='psi3'),
    'psi4': lambda: TargetState.equal_weights([(-1, 1), (0, 0), (1, -1)], 3, name='psi4'),
    'psi4_d5': lambda: psi_gaussian(5),
}


def target_preset(name):
    try:
        return TARGETS[name]()
    except KeyError:
        raise ConfigError(f"unknown target preset {name!r}", details={'target': name, 'choices': sorted(TARGETS)})
