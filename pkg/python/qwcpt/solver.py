"""
    Stationary solutions of the master equation and a backward-Euler
    propagator used to cross-check them.
"""

import math
import logging
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple, Union

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from qwcpt.errors import DegenerateSteadyState, RangeError, SingularStep
from qwcpt.model import COUNT_COMPONENTS, COUNT_LEVELS, DensityMatrix, Liouvillian, StateVector, unpack

logger = logging.getLogger(__name__)

PIVOT_TOLERANCE: float = 1e-13
TRACE_TOLERANCE: float = 1e-10
JACOBI_TOLERANCE: float = 1e-12
JACOBI_MAX_SWEEPS: int = 64

# Lowest eigenvalue tolerated before a steady state is reported as unphysical.
POSITIVITY_GATE_VERBATIM: float = -1e-6
POSITIVITY_GATE_CONSISTENT: float = -1e-9

GeneratorLike = Union[Liouvillian, np.ndarray]

TRACE_ROW: np.ndarray = np.concatenate([np.ones(COUNT_LEVELS), np.zeros(COUNT_COMPONENTS - COUNT_LEVELS)])
# Field-free equilibrium, the default starting point of propagation.
EQUILIBRIUM_STATE: np.ndarray = np.concatenate([[0.5, 0.5], np.zeros(COUNT_COMPONENTS - 2)])


def _factorize(matrix: np.ndarray, error: type, what: str) -> Tuple[np.ndarray, np.ndarray]:
    """
    LU with partial pivoting, rejecting pivots below `PIVOT_TOLERANCE`
    relative to the infinity norm of `matrix`.
    """
    scale = np.abs(matrix).sum(axis=1).max()
    with warnings.catch_warnings():
        # Exactly singular input is reported through the pivot check below.
        warnings.simplefilter('ignore', LinAlgWarning)
        warnings.simplefilter('ignore', RuntimeWarning)
        factors = lu_factor(matrix, check_finite=False)
    pivots = np.abs(np.diag(factors[0]))
    smallest = pivots.min()
    logger.debug('Factorized %s, norm %.3e, smallest pivot %.3e', what, scale, smallest)
    if not smallest > PIVOT_TOLERANCE * scale:
        raise error(f'{what} is numerically singular: pivot {smallest:.3e} vs norm {scale:.3e}')
    return factors


def residual(L: GeneratorLike, x: StateVector) -> float:
    return float(np.max(np.abs(np.asarray(L) @ np.asarray(x, dtype=float)), initial=0.0))


@dataclass(frozen=True)
class SteadyStateResult:
    x: StateVector
    residual_inf: float

    @property
    def rho(self) -> DensityMatrix:
        return unpack(self.x)

    @cached_property
    def min_eigenvalue(self) -> float:
        return min_eigenvalue(self.rho)


def steady_state(L: GeneratorLike, normalization_row: int = 0) -> SteadyStateResult:
    """
    Solves L @ x = 0 under unit trace. One population equation, redundant
    because the population rows sum to zero, is swapped for the trace row.
    """
    matrix = np.asarray(L, dtype=float)
    system = matrix.copy()
    system[normalization_row] = TRACE_ROW
    rhs = np.zeros(COUNT_COMPONENTS)
    rhs[normalization_row] = 1.0

    factors = _factorize(system, DegenerateSteadyState, 'stationary system')
    x = lu_solve(factors, rhs, check_finite=False)
    return SteadyStateResult(x=x, residual_inf=residual(matrix, x))


def positivity_gate(L: Union[Liouvillian, bool]) -> float:
    """Gate of a generator, or of the generator form named by an `eq13_consistent` flag."""
    consistent = L if isinstance(L, bool) else L.eq13_consistent
    return POSITIVITY_GATE_CONSISTENT if consistent else POSITIVITY_GATE_VERBATIM


def report_positivity(smallest: float, gate: float, where: str) -> bool:
    if smallest < gate:
        logger.warning('%s has eigenvalue %.3e below %.1e, density matrix is not positive', where, smallest, gate)
        return False
    return True


def check_positivity(result: SteadyStateResult, gate: float, where: str = 'steady state') -> bool:
    """Logs a warning and returns False when the density matrix has a negative eigenvalue below `gate`."""
    return report_positivity(result.min_eigenvalue, gate, where)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray

    @property
    def final(self) -> StateVector:
        return self.states[-1]

    def traces(self) -> np.ndarray:
        return self.states @ TRACE_ROW


def evolve_implicit(L: GeneratorLike, x0: StateVector, h: float, n: int) -> Trajectory:
    """
    Backward Euler, x[k + 1] = (I - h L)^-1 x[k], factorizing once.
    The trace row is a left null vector of L, so the trace is kept exactly
    up to rounding.
    """
    if not h > 0:
        raise RangeError(f'step must be positive, got {h!r}')
    if n < 1:
        raise RangeError(f'step count must be >= 1, got {n!r}')
    x0 = np.asarray(x0, dtype=float)
    if abs(TRACE_ROW @ x0 - 1) > TRACE_TOLERANCE:
        raise RangeError(f'initial state must have unit trace, got {TRACE_ROW @ x0!r}')

    matrix = np.asarray(L, dtype=float)
    factors = _factorize(np.eye(COUNT_COMPONENTS) - h * matrix, SingularStep, 'propagator')

    states = np.empty((n + 1, COUNT_COMPONENTS))
    states[0] = x0
    for step in range(n):
        states[step + 1] = lu_solve(factors, states[step], check_finite=False)
    times = h * np.arange(n + 1)
    logger.debug('Propagated %d steps to t=%.3e, trace drift %.3e', n, times[-1], abs(TRACE_ROW @ states[-1] - 1))
    return Trajectory(times=times, states=states)


def _symmetric_embedding(rho: DensityMatrix) -> np.ndarray:
    # A + iB Hermitian -> [[A, -B], [B, A]], same spectrum with doubled multiplicity.
    real, imag = rho.real, rho.imag
    return np.block([[real, -imag], [imag, real]])


def jacobi_eigenvalues(a: np.ndarray, tol: float = JACOBI_TOLERANCE) -> np.ndarray:
    """
    Cyclic Jacobi rotations on a real symmetric matrix until the Frobenius
    norm of the off-diagonal part drops to `tol`. Returns the diagonal.
    """
    a = np.array(a, dtype=float)
    n = len(a)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol:
            return np.diag(a).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = float(a[q, q] - a[p, p]) / (2.0 * float(a[p, q]))
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                column_p, column_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * column_p - s * column_q
                a[:, q] = s * column_p + c * column_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
    logger.warning('Jacobi rotations did not converge in %d sweeps', JACOBI_MAX_SWEEPS)
    return np.diag(a).copy()


def min_eigenvalue(rho: DensityMatrix) -> float:
    return float(jacobi_eigenvalues(_symmetric_embedding(np.asarray(rho, dtype=complex))).min())
