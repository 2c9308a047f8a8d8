from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from common.exceptions import DomainValueError

# Accepted drift of sum |w|^2 from 1 before a target is rejected (rounded weights in JSON).
NORM_SLACK = 1e-3


@dataclass(frozen=True)
class TargetTerm:
    ell_s: int
    ell_i: int
    weight: complex

    @property
    def mode(self):
        return (self.ell_s, self.ell_i)

    @property
    def ell_p(self):
        return self.ell_s + self.ell_i


@dataclass(frozen=True)
class TargetState:
    """
    Target biphoton state in S_{d x d}: a normalized superposition of |l_s, l_i> terms.

    Weights are renormalized exactly on construction.
    """
    terms: tuple
    d: int
    name: str = ''

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 3 or self.d % 2 == 0:
            raise DomainValueError(f"subspace dimension must be odd and >= 3, got {self.d}", details={'d': self.d})
        terms = tuple(t if isinstance(t, TargetTerm) else TargetTerm(*t) for t in self.terms)
        if not terms:
            raise DomainValueError("target needs at least one term", details={'terms': []})
        half = (self.d - 1) // 2
        seen = set()
        for term in terms:
            if int(term.ell_s) != term.ell_s or int(term.ell_i) != term.ell_i:
                raise DomainValueError(f"OAM indices must be integers, got {term.mode}", details={'mode': list(term.mode)})
            if abs(term.ell_s) > half or abs(term.ell_i) > half:
                raise DomainValueError(f"mode {term.mode} lies outside S_{self.d}x{self.d}",
                                       details={'mode': list(term.mode), 'd': self.d})
            if term.mode in seen:
                raise DomainValueError(f"duplicate mode {term.mode}", details={'mode': list(term.mode)})
            seen.add(term.mode)
        norm2 = sum(abs(complex(t.weight)) ** 2 for t in terms)
        if abs(norm2 - 1) > NORM_SLACK:
            raise DomainValueError(f"target weights must be normalized, sum |w|^2 = {norm2:.6g}",
                                   details={'norm': norm2})
        scale = np.sqrt(norm2) if abs(norm2 - 1) > 1e-12 else 1.0
        terms = tuple(TargetTerm(int(t.ell_s), int(t.ell_i), complex(t.weight) / scale) for t in terms)
        object.__setattr__(self, 'terms', tuple(sorted(terms, key=lambda t: t.mode)))

    @classmethod
    def equal_weights(cls, modes, d, name=''):
        weight = 1 / np.sqrt(len(modes))
        return cls(terms=tuple(TargetTerm(ls, li, weight) for ls, li in modes), d=d, name=name)

    @property
    def half(self):
        return (self.d - 1) // 2

    @property
    def modes(self):
        return [t.mode for t in self.terms]

    def weight(self, ell_s, ell_i):
        for term in self.terms:
            if term.mode == (ell_s, ell_i):
                return term.weight
        return 0j

    @property
    def pump_orders(self):
        """Anti-diagonals l_p = l_s + l_i that carry a target term, ascending."""
        return sorted({t.ell_p for t in self.terms})

    def as_payload(self):
        payload = {
            'd': self.d,
            'terms': [{'ls': t.ell_s, 'li': t.ell_i, 're': t.weight.real, 'im': t.weight.imag} for t in self.terms],
        }
        if self.name:
            payload['name'] = self.name
        return payload

    @classmethod
    def from_payload(cls, payload):
        terms = tuple(TargetTerm(int(t['ls']), int(t['li']), complex(t['re'], t.get('im', 0.0)))
                      for t in payload['terms'])
        return cls(terms=terms, d=int(payload['d']), name=payload.get('name', ''))


@dataclass(frozen=True)
class ModeClass:
    """A mode of S_{d x d} on one anti-diagonal, tagged with its relative mode number."""
    ell_s: int
    ell_i: int
    N_R: int
    weight: complex = 0j

    @property
    def mode(self):
        return (self.ell_s, self.ell_i)

    @property
    def ell_p(self):
        return self.ell_s + self.ell_i


@dataclass(frozen=True)
class DiagonalClass:
    """Modes of one anti-diagonal l_p inside S_{d x d}, split into target and unintended."""
    ell_p: int
    targets: tuple
    unintended: tuple

    @property
    def target_classes(self):
        return sorted({m.N_R for m in self.targets}, reverse=True)

    @property
    def needs_crystal(self):
        """Per-mode crystal constraints: something to suppress or more than one target class to balance."""
        return bool(self.unintended) or len(self.target_classes) > 1

    def as_report(self):
        return {
            'ell_p': self.ell_p,
            'targets': [{'mode': list(m.mode), 'N_R': m.N_R} for m in self.targets],
            'unintended': [{'mode': list(m.mode), 'N_R': m.N_R} for m in self.unintended],
        }


@dataclass(frozen=True)
class Clash:
    """An unintended mode that cannot be suppressed without suppressing a target mode."""
    unintended: tuple
    target: tuple
    N_R: int

    def describe(self):
        return (f"unintended mode {self.unintended} and target mode {self.target} "
                f"share N_R = {self.N_R}")


@dataclass(frozen=True)
class Feasibility:
    """
    Verdict of the feasibility rules.

    When feasible, constrained_diagonal is the single anti-diagonal whose modes fix the crystal
    (None when the pump alone suffices), target_classes are the N_R classes that carry target
    weight there and suppressed_classes the classes that must vanish.
    """
    feasible: bool
    reason: str = ''
    constrained_diagonal: Optional[int] = None
    target_classes: tuple = ()
    suppressed_classes: tuple = ()
    clashes: tuple = ()

    @property
    def constraint_count(self):
        return len(self.target_classes) + len(self.suppressed_classes)

    def as_report(self):
        return {
            'feasible': self.feasible,
            'reason': self.reason,
            'constrained_diagonal': self.constrained_diagonal,
            'target_classes': list(self.target_classes),
            'suppressed_classes': list(self.suppressed_classes),
            'clashes': [{'unintended': list(c.unintended), 'target': list(c.target), 'N_R': c.N_R}
                        for c in self.clashes],
        }


@dataclass(frozen=True)
class CrystalSolution:
    """Cosine coefficients with c_0 > 0, plus the least-squares diagnostics."""
    c: tuple
    sigma: float
    residual: float
    rank: int
    rows: tuple = ()

    @property
    def ratios(self):
        return tuple(v / self.c[0] for v in self.c[1:]) if self.c[0] else ()


@dataclass
class EngineeredSource:
    """Solved pump and crystal together with the spectrum they produce and its Schmidt analysis."""
    target: TargetState
    pump: object
    crystal: object
    crystal_solution: Optional[CrystalSolution]
    feasibility: Feasibility
    achieved: object
    restricted: object
    schmidt: object
    mes: object
    diagnostics: list = field(default_factory=list)
