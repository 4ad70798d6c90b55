"""
    Rotating-frame master equation of a four-level double quantum well:
    parameters, state packing and assembly of the 16x16 real generator.

    Levels |1>, |2> are the ground doublet coupled by the infrared field V,
    |3>, |4> the tunnel-split excited doublet at -Delta and +Delta around the
    optical line center. Rates, Rabi frequencies and detunings are in units
    of gamma, time in units of 1/gamma.
"""

import math
import logging
from dataclasses import dataclass, fields, asdict
from typing import Dict, List, Tuple

import numpy as np

from qwcpt.errors import InvalidParams, NotHermitian

logger = logging.getLogger(__name__)

COUNT_LEVELS: int = 4
COUNT_COMPONENTS: int = 16
HERMITIAN_TOLERANCE: float = 1e-12

# (i, j) level pairs with i < j in StateVector order, 1-based like the equations.
COHERENCE_PAIRS: Tuple[Tuple[int, int], ...] = (
    (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
)

STATE_LABELS: Tuple[str, ...] = (
    'rho11', 'rho22', 'rho33', 'rho44',
    're_rho12', 'im_rho12', 're_rho13', 'im_rho13', 're_rho14', 'im_rho14',
    're_rho23', 'im_rho23', 're_rho24', 'im_rho24', 're_rho34', 'im_rho34',
)

# StateVector and DensityMatrix are plain arrays of fixed shape.
StateVector = np.ndarray
DensityMatrix = np.ndarray


def population_index(level: int) -> int:
    return level - 1


def coherence_index(i: int, j: int) -> int:
    """Index of Re(rho_ij) in a StateVector, Im(rho_ij) follows it."""
    return COUNT_LEVELS + 2 * COHERENCE_PAIRS.index((i, j))


@dataclass(frozen=True)
class RateSet:
    """
    Population decay and coherence dephasing constants, in units of gamma.
    Defaults are the heterostructure values for gamma = 1 meV.
    """

    gamma21: float = 2.5e-5
    gamma31: float = 0.8
    gamma32: float = 0.8
    gamma41: float = 0.75
    gamma42: float = 0.75
    Gamma12: float = 1.0e-4
    Gamma13: float = 1.92
    Gamma14: float = 1.8
    Gamma23: float = 1.92
    Gamma24: float = 1.8
    Gamma34: float = 3.41
    gamma_si: float = 1.519e11

    def validate(self) -> 'RateSet':
        for field in fields(self):
            value = getattr(self, field.name)
            if not math.isfinite(value) or value < 0:
                raise InvalidParams(f'rate {field.name} must be finite and >= 0, got {value!r}')
        return self

    def in_si(self, value: float) -> float:
        """Converts a rate or frequency from units of gamma to 1/s."""
        return value * self.gamma_si

    @classmethod
    def zeros(cls) -> 'RateSet':
        return cls(**{field.name: 0.0 for field in fields(cls) if field.name != 'gamma_si'})


def default_rates() -> RateSet:
    return RateSet(Gamma12=4 * RateSet.gamma21)


@dataclass(frozen=True)
class DriveParams:
    """
    Field amplitudes and detunings of the three-field closed contour.
    Only the total contour phase `phi` enters the stationary problem,
    the individual field phases are never stored.
    """

    omega1: float = 0.25
    omega2: float = 0.25
    v: float = 0.25
    q: float = 0.8
    kappa: float = 0.8
    delta1: float = 0.0
    delta2: float = 0.0
    big_delta: float = 1.0
    phi: float = 0.0

    def two_photon_detuning(self) -> float:
        return (self.delta1 - self.delta2) / 2

    def validate(self) -> 'DriveParams':
        for field in fields(self):
            value = getattr(self, field.name)
            if not math.isfinite(value):
                raise InvalidParams(f'{field.name} must be finite, got {value!r}')
        for name in ('omega1', 'omega2', 'v', 'big_delta'):
            if getattr(self, name) < 0:
                raise InvalidParams(f'{name} must be >= 0, got {getattr(self, name)!r}')
        return self

    def to_physical(self, rates: RateSet) -> Dict[str, float]:
        """Frequencies in 1/s, dimensionless ratios and the phase untouched."""
        physical = asdict(self)
        for name in ('omega1', 'omega2', 'v', 'delta1', 'delta2', 'big_delta'):
            physical[name] = rates.in_si(physical[name])
        return physical

    @classmethod
    def field_free(cls) -> 'DriveParams':
        return cls(omega1=0.0, omega2=0.0, v=0.0, q=0.0, kappa=0.0, big_delta=0.0)


def detunings_from_delta(delta: float) -> Tuple[float, float]:
    """Symmetric split of the two-photon detuning: (delta1, delta2) = (+delta, -delta)."""
    return delta, -delta


def pack(rho: DensityMatrix) -> StateVector:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (COUNT_LEVELS, COUNT_LEVELS):
        raise NotHermitian(f'expected a 4x4 matrix, got shape {rho.shape}')
    deviation = np.max(np.abs(rho - rho.conj().T))
    if deviation > HERMITIAN_TOLERANCE:
        raise NotHermitian(f'matrix deviates from Hermitian by {deviation:.3e}')

    x = np.empty(COUNT_COMPONENTS)
    x[:COUNT_LEVELS] = rho.diagonal().real
    for i, j in COHERENCE_PAIRS:
        index = coherence_index(i, j)
        x[index] = rho[i - 1, j - 1].real
        x[index + 1] = rho[i - 1, j - 1].imag
    return x


def unpack(x: StateVector) -> DensityMatrix:
    x = np.asarray(x, dtype=float)
    rho = np.diag(x[:COUNT_LEVELS]).astype(complex)
    for i, j in COHERENCE_PAIRS:
        index = coherence_index(i, j)
        rho[i - 1, j - 1] = complex(x[index], x[index + 1])
        rho[j - 1, i - 1] = complex(x[index], -x[index + 1])
    return rho


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """
    Real generator of d(StateVector)/dt = matrix @ StateVector.
    Rows 0-3 are the population equations and sum to zero column-wise.
    """

    matrix: np.ndarray
    eq13_consistent: bool = False

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)

    def trace_defect(self) -> float:
        return float(np.max(np.abs(self.matrix[:COUNT_LEVELS].sum(axis=0))))


# How a rho_kl, with k and l in any order, is expressed through StateVector
# entries: rho_kl = sum(factor * x[column]).
_Sources = Dict[Tuple[int, int], Tuple[Tuple[int, complex], ...]]


def _sources() -> _Sources:
    sources = {}
    for level in range(1, COUNT_LEVELS + 1):
        sources[(level, level)] = ((population_index(level), 1.0 + 0j),)
    for i, j in COHERENCE_PAIRS:
        index = coherence_index(i, j)
        sources[(i, j)] = ((index, 1.0 + 0j), (index + 1, 1j))
        sources[(j, i)] = ((index, 1.0 + 0j), (index + 1, -1j))
    return sources


_SOURCES: _Sources = _sources()

# One equation term: d(rho_target)/dt += coefficient * rho_source.
_Term = Tuple[Tuple[int, int], complex, Tuple[int, int]]


def _terms(params: DriveParams, rates: RateSet, eq13_consistent: bool) -> List[_Term]:
    qo1 = params.q * params.omega1
    ko2 = params.kappa * params.omega2
    o1 = params.omega1
    o2 = params.omega2
    v = params.v
    d1 = params.delta1
    d2 = params.delta2
    big = params.big_delta
    # Only cos and sin of the phase enter, so phi and phi + 2*pi agree.
    cos_phi = math.cos(params.phi)
    sin_phi = math.sin(params.phi)
    forward = complex(cos_phi, sin_phi)
    backward = complex(cos_phi, -sin_phi)
    r = rates
    i = 1j

    return [
        # rho11
        ((1, 1), i * v, (1, 2)), ((1, 1), -i * v, (2, 1)),
        ((1, 1), i * qo1, (1, 3)), ((1, 1), -i * qo1, (3, 1)),
        ((1, 1), i * o1, (1, 4)), ((1, 1), -i * o1, (4, 1)),
        ((1, 1), -2 * r.gamma21, (1, 1)), ((1, 1), 2 * r.gamma21, (2, 2)),
        ((1, 1), 2 * r.gamma31, (3, 3)), ((1, 1), 2 * r.gamma41, (4, 4)),
        # rho22
        ((2, 2), i * v, (2, 1)), ((2, 2), -i * v, (1, 2)),
        ((2, 2), i * ko2, (2, 3)), ((2, 2), -i * ko2, (3, 2)),
        ((2, 2), i * o2, (2, 4)), ((2, 2), -i * o2, (4, 2)),
        ((2, 2), 2 * r.gamma21, (1, 1)), ((2, 2), -2 * r.gamma21, (2, 2)),
        ((2, 2), 2 * r.gamma32, (3, 3)), ((2, 2), 2 * r.gamma42, (4, 4)),
        # rho33
        ((3, 3), i * qo1, (3, 1)), ((3, 3), -i * qo1, (1, 3)),
        ((3, 3), i * ko2, (3, 2)), ((3, 3), -i * ko2, (2, 3)),
        ((3, 3), -2 * (r.gamma31 + r.gamma32), (3, 3)),
        # rho44
        ((4, 4), i * o1, (4, 1)), ((4, 4), -i * o1, (1, 4)),
        ((4, 4), i * o2, (4, 2)), ((4, 4), -i * o2, (2, 4)),
        ((4, 4), -2 * (r.gamma41 + r.gamma42), (4, 4)),
        # rho12
        ((1, 2), complex(-r.Gamma12, d2 - d1), (1, 2)),
        ((1, 2), i * ko2 * forward, (1, 3)), ((1, 2), i * o2 * forward, (1, 4)),
        ((1, 2), -i * qo1 * forward, (3, 2)), ((1, 2), -i * o1 * forward, (4, 2)),
        ((1, 2), i * v, (1, 1)), ((1, 2), -i * v, (2, 2)),
        # rho13
        ((1, 3), complex(-r.Gamma13, -d1 - big), (1, 3)),
        ((1, 3), i * ko2 * backward, (1, 2)), ((1, 3), -i * v * backward, (2, 3)),
        ((1, 3), -i * o1, (4, 3)),
        ((1, 3), i * qo1, (1, 1)), ((1, 3), -i * qo1, (3, 3)),
        # rho14
        ((1, 4), complex(-r.Gamma14, -d1 + big), (1, 4)),
        ((1, 4), i * o2 * backward, (1, 2)), ((1, 4), -i * v * backward, (2, 4)),
        ((1, 4), -i * qo1, (3, 4)),
        ((1, 4), i * o1, (1, 1)), ((1, 4), -i * o1, (4, 4)),
        # rho23
        ((2, 3), complex(-r.Gamma23, -d2 - big), (2, 3)),
        ((2, 3), i * qo1 * forward, (2, 1)), ((2, 3), -i * v * forward, (1, 3)),
        ((2, 3), -i * o2, (4, 3)),
        ((2, 3), i * ko2, (2, 2)), ((2, 3), -i * ko2, (3, 3)),
        # rho24
        ((2, 4), complex(-r.Gamma24, -d2 + big), (2, 4)),
        ((2, 4), i * o1 * forward, (2, 1)), ((2, 4), -i * v * forward, (1, 4)),
        ((2, 4), -i * ko2, (3, 4)),
        ((2, 4), i * o2, (2, 2)), ((2, 4), -i * o2, (4, 4)),
        # rho34, the rho43 equation is its complex conjugate
        ((3, 4), complex(-r.Gamma34, 2 * big), (3, 4)),
        ((3, 4), -i * qo1, (1, 4)), ((3, 4), -i * ko2, (2, 4)),
        ((3, 4), i * o1, (3, 1)),
        ((3, 4), i * (o2 if eq13_consistent else ko2), (3, 2)),
    ]


def build_liouvillian(params: DriveParams, rates: RateSet, eq13_consistent: bool = False) -> Liouvillian:
    """
    Assembles the generator term by term from the complex equations.
    With `eq13_consistent` the rho32 term of the rho34 equation carries
    Omega2 instead of kappa * Omega2, as the commutator gives.
    """
    params.validate()
    rates.validate()

    matrix = np.zeros((COUNT_COMPONENTS, COUNT_COMPONENTS))
    for (i, j), coefficient, source in _terms(params, rates, eq13_consistent):
        if i == j:
            row = population_index(i)
            for column, factor in _SOURCES[source]:
                matrix[row, column] += (coefficient * factor).real
        else:
            row = coherence_index(i, j)
            for column, factor in _SOURCES[source]:
                contribution = coefficient * factor
                matrix[row, column] += contribution.real
                matrix[row + 1, column] += contribution.imag

    return Liouvillian(matrix=matrix, eq13_consistent=eq13_consistent)
