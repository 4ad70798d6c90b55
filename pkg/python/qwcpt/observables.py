"""
    Spectroscopic quantities read off stationary density matrices,
    and the contrast/width of the dark resonance in a detuning scan.
"""

import math
from dataclasses import dataclass, astuple, fields
from typing import Dict, Sequence, Tuple

import numpy as np

from qwcpt.errors import GridNotCoveringZero, GridTooSmall
from qwcpt.model import DriveParams, StateVector, coherence_index

MIN_GRID_POINTS: int = 5
BASELINE_FRACTION: float = 0.05

_RE13 = coherence_index(1, 3)
_RE14 = coherence_index(1, 4)
_RE23 = coherence_index(2, 3)
_RE24 = coherence_index(2, 4)


@dataclass(frozen=True)
class ObservableRow:
    """
    Populations and optical coherences at one parameter point.
    Im(rho13 + rho14) is proportional to probe absorption (negative means gain),
    the real parts to the refractive index seen by the probe and strong fields.
    """

    p11_p22: float
    p33: float
    p44: float
    p33_p44: float
    absorption_probe: float
    dispersion_probe: float
    dispersion_strong: float
    residual_inf: float

    def as_tuple(self) -> Tuple[float, ...]:
        return astuple(self)


OBSERVABLE_NAMES: Tuple[str, ...] = tuple(field.name for field in fields(ObservableRow))
# Names of the same columns in CSV files and on the command line.
COLUMN_NAMES: Tuple[str, ...] = (
    'p11_p22', 'p33', 'p44', 'p33_p44', 'abs_probe', 'disp_probe', 'disp_strong', 'residual',
)
COLUMN_FIELDS: Dict[str, str] = {**dict(zip(OBSERVABLE_NAMES, OBSERVABLE_NAMES)), **dict(zip(COLUMN_NAMES, OBSERVABLE_NAMES))}


def observables_of(x: StateVector, residual_inf: float = 0.0) -> ObservableRow:
    x = np.asarray(x, dtype=float)
    return ObservableRow(
        p11_p22=float(x[0] + x[1]),
        p33=float(x[2]),
        p44=float(x[3]),
        p33_p44=float(x[2] + x[3]),
        absorption_probe=float(x[_RE13 + 1] + x[_RE14 + 1]),
        dispersion_probe=float(x[_RE13] + x[_RE14]),
        dispersion_strong=float(x[_RE23] + x[_RE24]),
        residual_inf=float(residual_inf),
    )


@dataclass(frozen=True)
class ResonanceMetrics:
    contrast: float
    fwhm: float
    dip_position: float

    @property
    def has_dip(self) -> bool:
        return self.contrast > 0


def _crossing(grid: np.ndarray, curve: np.ndarray, inside: int, outside: int, level: float) -> float:
    """Linear interpolation of where `curve` passes `level` between neighbours."""
    y_in, y_out = curve[inside], curve[outside]
    if y_out == y_in:
        return float(grid[outside])
    fraction = (level - y_in) / (y_out - y_in)
    return float(grid[inside] + fraction * (grid[outside] - grid[inside]))


def resonance_metrics(delta_grid: Sequence[float], p33_p44: Sequence[float]) -> ResonanceMetrics:
    """
    Dark-resonance dip of the excited-state population:

    * baseline is the mean over the outermost 5% of points on each side,
    * the dip is the minimum over the central half of the grid,
    * the width is measured at half contrast with linear interpolation,
      clipped to the grid ends if the curve never recovers.

    Without a dip the contrast is 0 and the width NaN.
    """
    grid = np.asarray(delta_grid, dtype=float)
    curve = np.asarray(p33_p44, dtype=float)
    if grid.ndim != 1 or curve.shape != grid.shape:
        raise GridTooSmall(f'grid and curve must be 1D of equal length, got {grid.shape} and {curve.shape}')
    count = len(grid)
    if count < MIN_GRID_POINTS:
        raise GridTooSmall(f'need at least {MIN_GRID_POINTS} points, got {count}')
    if np.any(np.diff(grid) <= 0):
        raise GridTooSmall('detuning grid must be strictly increasing')
    if not grid[0] <= 0.0 <= grid[-1]:
        raise GridNotCoveringZero(f'grid [{grid[0]}, {grid[-1]}] does not span zero detuning')

    edge = max(1, int(math.floor(BASELINE_FRACTION * count)))
    baseline = float(np.mean(np.concatenate([curve[:edge], curve[-edge:]])))

    lo, hi = count // 4, count - count // 4
    dip_index = lo + int(np.argmin(curve[lo:hi]))
    dip_position = float(grid[dip_index])
    contrast = baseline - float(curve[dip_index])
    if not contrast > 0:
        return ResonanceMetrics(contrast=0.0, fwhm=math.nan, dip_position=dip_position)

    level = baseline - contrast / 2
    left = dip_index
    while left > 0 and curve[left - 1] < level:
        left -= 1
    right = dip_index
    while right < count - 1 and curve[right + 1] < level:
        right += 1
    left_edge = _crossing(grid, curve, left, left - 1, level) if left > 0 else float(grid[0])
    right_edge = _crossing(grid, curve, right, right + 1, level) if right < count - 1 else float(grid[-1])
    return ResonanceMetrics(contrast=contrast, fwhm=right_edge - left_edge, dip_position=dip_position)


def noncoupled_overlap(params: DriveParams) -> float:
    """
    Overlap of the ground superpositions left uncoupled from |3> and from |4>.
    Both trapping channels share one dark state when it is 1 and cancel when
    it is 0. NaN if either excited level is not driven.
    """
    dark3 = np.array([params.kappa * params.omega2, -params.q * params.omega1])
    dark4 = np.array([params.omega2, -params.omega1])
    norm3, norm4 = np.linalg.norm(dark3), np.linalg.norm(dark4)
    if norm3 == 0 or norm4 == 0:
        return math.nan
    return float(abs(dark3 @ dark4) / (norm3 * norm4))
