"""
    One-dimensional parameter scans of the stationary state and the
    parameter sets of the published figures.
"""

import os
import math
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
import pyarrow as pa

from qwcpt.errors import DegenerateSteadyState, RangeError, UnknownFigure
from qwcpt.model import DriveParams, RateSet, build_liouvillian, default_rates, detunings_from_delta
from qwcpt.observables import COLUMN_FIELDS, COLUMN_NAMES, ObservableRow, observables_of
from qwcpt.solver import positivity_gate, report_positivity, steady_state

logger = logging.getLogger(__name__)

THREADS_VARIABLE: str = 'QWCPT_THREADS'
DEFAULT_START: float = -0.5
DEFAULT_STOP: float = 0.5
DEFAULT_COUNT: int = 1001


class SweepParameter(str, Enum):
    delta = 'delta'
    phi = 'phi'
    v = 'v'
    big_delta = 'big_delta'
    q = 'q'
    kappa = 'kappa'
    omega1 = 'omega1'
    omega2 = 'omega2'

    @classmethod
    def parse(cls, name: str) -> 'SweepParameter':
        try:
            return cls(name)
        except ValueError:
            choices = ', '.join(member.value for member in cls)
            raise RangeError(f'unknown sweep parameter {name!r}, expected one of {choices}') from None


def with_value(base: DriveParams, param: SweepParameter, value: float) -> DriveParams:
    if param is SweepParameter.delta:
        delta1, delta2 = detunings_from_delta(value)
        return replace(base, delta1=delta1, delta2=delta2)
    return replace(base, **{param.value: value})


@dataclass(frozen=True)
class SweepSpec:
    base: DriveParams = field(default_factory=DriveParams)
    rates: RateSet = field(default_factory=default_rates)
    param: SweepParameter = SweepParameter.delta
    start: float = DEFAULT_START
    stop: float = DEFAULT_STOP
    count: int = DEFAULT_COUNT
    eq13_consistent: bool = False
    label: str = ''

    def __post_init__(self):
        if not isinstance(self.param, SweepParameter):
            object.__setattr__(self, 'param', SweepParameter.parse(self.param))
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise RangeError(f'sweep bounds must be finite, got [{self.start}, {self.stop}]')
        if not self.start < self.stop:
            raise RangeError(f'sweep start {self.start} must be below stop {self.stop}')
        if self.count < 2:
            raise RangeError(f'sweep needs at least 2 points, got {self.count}')

    def axis(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def params_at(self, value: float) -> DriveParams:
        return with_value(self.base, self.param, float(value))


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    axis: np.ndarray
    rows: Tuple[ObservableRow, ...]

    def column(self, name: str) -> np.ndarray:
        """Axis or observable values, by field name or by file column name."""
        if name == self.spec.param.value:
            return self.axis
        if name not in COLUMN_FIELDS:
            raise KeyError(f'unknown column {name!r}, expected {self.spec.param.value!r} or one of {list(COLUMN_NAMES)}')
        field_name = COLUMN_FIELDS[name]
        return np.array([getattr(row, field_name) for row in self.rows], dtype=float)

    def to_table(self) -> pa.Table:
        columns = {self.spec.param.value: pa.array(self.axis, type=pa.float64())}
        for name in COLUMN_NAMES:
            columns[name] = pa.array(self.column(name), type=pa.float64())
        return pa.table(columns)


def configured_workers() -> int:
    raw = os.environ.get(THREADS_VARIABLE)
    if raw is None:
        return os.cpu_count() or 1
    try:
        workers = int(raw)
    except ValueError:
        raise RangeError(f'{THREADS_VARIABLE} must be an integer, got {raw!r}') from None
    if workers < 1:
        raise RangeError(f'{THREADS_VARIABLE} must be >= 1, got {workers}')
    return workers


def _solve_point(spec: SweepSpec, value: float, check: bool) -> Tuple[ObservableRow, float]:
    generator = build_liouvillian(spec.params_at(value), spec.rates, eq13_consistent=spec.eq13_consistent)
    try:
        result = steady_state(generator)
    except DegenerateSteadyState as error:
        raise DegenerateSteadyState(str(error), parameter=spec.param.value, value=float(value)) from error
    smallest = result.min_eigenvalue if check else math.nan
    return observables_of(result.x, result.residual_inf), smallest


def sweep_1d(spec: SweepSpec, workers: Optional[int] = None, positivity: bool = False) -> SweepResult:
    """
    Stationary observables over the grid of `spec`. Points are independent,
    with `workers` > 1 they are solved on a thread pool and gathered in axis
    order, so the result does not depend on the worker count.

    With `positivity` the smallest density-matrix eigenvalue over the grid is
    compared with the gate of the generator form, and one warning per curve
    names the worst point.
    """
    axis = spec.axis()
    if workers is None:
        workers = configured_workers()
    workers = max(1, min(workers, len(axis)))
    logger.debug('Sweeping %s over %d points with %d workers', spec.param.value, len(axis), workers)

    if workers == 1:
        solved = [_solve_point(spec, value, positivity) for value in axis]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solved = list(pool.map(lambda value: _solve_point(spec, value, positivity), axis))

    if positivity:
        eigenvalues = np.array([smallest for _, smallest in solved])
        worst = int(np.argmin(eigenvalues))
        report_positivity(
            float(eigenvalues[worst]), positivity_gate(spec.eq13_consistent),
            where=f'{spec.label or "sweep"} at {spec.param.value}={float(axis[worst])!r}',
        )
    return SweepResult(spec=spec, axis=axis, rows=tuple(row for row, _ in solved))


def _phase_label(phi: float) -> str:
    turns = phi / math.pi
    return 'phi0' if turns == 0 else f'phi{turns:g}pi'


def _value_label(name: str, value: float) -> str:
    return f'{name}{value:g}'


FIGURES: Tuple[str, ...] = ('fig2', 'fig3', 'fig4', 'fig5', 'fig6', 'fig7', 'fig8')

# Values that vary between the curves of a preset.
_PHASES: Tuple[float, ...] = (0.0, math.pi / 4, math.pi / 2)
_FIG3_COUPLINGS: Tuple[float, ...] = (0.0, 0.05, 0.1, 0.25)
_FIG5_COUPLINGS: Tuple[float, ...] = (0.0, 0.25, 0.75, 2.25)
_FIG6_SPLITTINGS: Tuple[float, ...] = (0.5, 1.0, 2.0, 4.0)
_FIG7_RATIOS: Tuple[float, ...] = (1.0, 0.5, 0.0, -0.5, -1.0)
_FIG8_COUPLINGS: Tuple[float, ...] = (0.0, 0.25)


def _curves(figure: str, omega2: Optional[float]) -> List[Tuple[str, DriveParams]]:
    if figure == 'fig2':
        base = DriveParams(omega1=0.25, omega2=0.25, v=0.25, big_delta=1.0, q=0.8, kappa=0.8)
        return [(_phase_label(phi), replace(base, phi=phi)) for phi in _PHASES]
    if figure == 'fig3':
        base = DriveParams(omega1=0.25, omega2=0.25, big_delta=1.0, q=0.8, kappa=0.8, phi=math.pi / 2)
        return [(_value_label('v', v), replace(base, v=v)) for v in _FIG3_COUPLINGS]
    if figure == 'fig4':
        base = DriveParams(omega1=0.25, omega2=3 * 0.25, v=0.25, big_delta=1.0, q=1.0, kappa=1.0)
        return [(_phase_label(phi), replace(base, phi=phi)) for phi in _PHASES]
    if figure == 'fig5':
        base = DriveParams(omega1=0.25, omega2=3 * 0.25, big_delta=1.0, q=1.0, kappa=1.0, phi=math.pi / 4)
        return [(_value_label('v', v), replace(base, v=v)) for v in _FIG5_COUPLINGS]
    if figure == 'fig6':
        base = DriveParams(omega1=0.25, omega2=0.25, v=0.25, q=1.0, kappa=1.0)
        return [
            (f'{_phase_label(phi)}_{_value_label("bigdelta", big_delta)}', replace(base, phi=phi, big_delta=big_delta))
            for phi in (0.0, math.pi / 2) for big_delta in _FIG6_SPLITTINGS
        ]
    if figure == 'fig7':
        base = DriveParams(omega1=0.25, omega2=0.25, v=0.25, big_delta=1.0, kappa=1.0, phi=0.0)
        return [(_value_label('q', q), replace(base, q=q)) for q in _FIG7_RATIOS]
    if figure == 'fig8':
        base = DriveParams(omega1=0.25, omega2=0.25 if omega2 is None else omega2, big_delta=1.0, q=1.0, kappa=1.0)
        return [(_value_label('v', v), replace(base, v=v)) for v in _FIG8_COUPLINGS]
    raise UnknownFigure(f'unknown figure {figure!r}, expected one of {", ".join(FIGURES)}')


def figure_preset(
    figure: str,
    start: float = DEFAULT_START,
    stop: float = DEFAULT_STOP,
    count: int = DEFAULT_COUNT,
    eq13_consistent: bool = False,
    omega2: Optional[float] = None,
    rates: Optional[RateSet] = None,
) -> List[SweepSpec]:
    """
    One two-photon detuning scan per plotted curve. `figure` is `fig2`..`fig8`
    or just the number. `omega2` overrides the optical coupling of fig8 only.
    """
    figure = str(figure)
    if not figure.startswith('fig'):
        figure = f'fig{figure}'
    rates = default_rates() if rates is None else rates
    return [
        SweepSpec(
            base=base, rates=rates, param=SweepParameter.delta,
            start=start, stop=stop, count=count,
            eq13_consistent=eq13_consistent, label=f'{figure}_{suffix}',
        )
        for suffix, base in _curves(figure, omega2)
    ]

