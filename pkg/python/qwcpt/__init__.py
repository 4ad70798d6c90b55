"""
    Coherent population trapping in double tunneling-coupled quantum wells:
    stationary density matrices and spectra of the four-level closed contour.
"""

from qwcpt.errors import (
    ConfigurationError, DegenerateSteadyState, EmptySelection, FormatError, GridNotCoveringZero,
    GridTooSmall, InvalidParams, NotHermitian, ParseError, QwcptError, RangeError, SingularStep,
    SolverError, UnknownFigure, UnknownKey,
)
from qwcpt.model import (
    DriveParams, Liouvillian, RateSet, STATE_LABELS,
    build_liouvillian, default_rates, detunings_from_delta, pack, unpack,
)
from qwcpt.solver import (
    SteadyStateResult, Trajectory, evolve_implicit, min_eigenvalue, residual, steady_state,
)
from qwcpt.observables import (
    ObservableRow, ResonanceMetrics, noncoupled_overlap, observables_of, resonance_metrics,
)
from qwcpt.sweep import SweepParameter, SweepResult, SweepSpec, figure_preset, sweep_1d
from qwcpt.config import RunConfig, load_config, parse_config
from qwcpt.tables import read_csv, write_csv
from qwcpt.svg import emit_svg
from qwcpt.cli import run_cli
