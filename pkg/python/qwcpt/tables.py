"""
    Versioned CSV files for sweeps and trajectories.

    Numbers are written with 17 significant digits, enough for binary64 to
    survive the round trip, and read back through Arrow as float64 columns.
"""

import io
import os
import logging
import tempfile
from typing import IO, List, Sequence, Union

import numpy as np
import pyarrow as pa
import pyarrow.csv as csv

from qwcpt.errors import FormatError
from qwcpt.model import STATE_LABELS
from qwcpt.observables import COLUMN_NAMES
from qwcpt.solver import Trajectory
from qwcpt.sweep import SweepResult

logger = logging.getLogger(__name__)

SWEEP_HEADER: str = '# qwcpt-csv v1'
TRAJECTORY_HEADER: str = '# qwcpt-trajectory v1'
# The first column is named after the swept parameter.
SWEEP_COLUMNS: List[str] = list(COLUMN_NAMES)
TRAJECTORY_COLUMNS: List[str] = ['t', *STATE_LABELS]
NUMBER_FORMAT: str = '%.17g'

PathLike = Union[str, os.PathLike]
Sink = Union[PathLike, IO[str]]
Source = Union[PathLike, IO[str]]


def atomic_write(path: PathLike, content: str) -> None:
    """Writes through a temporary file in the same directory, then renames."""
    directory = os.path.dirname(os.path.abspath(path))
    descriptor, temporary = tempfile.mkstemp(dir=directory, prefix='.qwcpt-', suffix='.tmp')
    try:
        with os.fdopen(descriptor, 'w', encoding='utf-8', newline='\n') as file:
            file.write(content)
        os.replace(temporary, path)
    except BaseException:
        if os.path.exists(temporary):
            os.unlink(temporary)
        raise
    logger.info('Wrote %s', path)


def _emit(content: str, sink: Sink) -> None:
    if isinstance(sink, (str, os.PathLike)):
        atomic_write(sink, content)
    else:
        sink.write(content)


def _format(header: str, names: Sequence[str], data: np.ndarray) -> str:
    buffer = io.StringIO()
    np.savetxt(
        buffer, data, fmt=NUMBER_FORMAT, delimiter=',',
        header=f'{header}\n{",".join(names)}', comments='',
    )
    return buffer.getvalue()


def write_csv(result: SweepResult, sink: Sink) -> None:
    table = result.to_table()
    data = np.column_stack([column.to_numpy() for column in table.columns])
    names = [result.spec.param.value, *SWEEP_COLUMNS]
    _emit(_format(SWEEP_HEADER, names, data), sink)


def write_trajectory_csv(trajectory: Trajectory, sink: Sink) -> None:
    data = np.column_stack([trajectory.times, trajectory.states])
    _emit(_format(TRAJECTORY_HEADER, TRAJECTORY_COLUMNS, data), sink)


def _read_text(source: Source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, 'r', encoding='utf-8') as file:
            return file.read()
    return source.read()


def _parse(text: str, header: str, expected: Sequence[str], first_free: bool) -> pa.Table:
    lines = text.split('\n', 2)
    if len(lines) < 2 or lines[0].strip() != header:
        found = lines[0].strip() if lines else ''
        raise FormatError(f'expected version line {header!r}, found {found!r}')
    names = lines[1].strip().split(',')
    tail = names[1:] if first_free else names
    if tail != list(expected) or (first_free and not names[0]):
        raise FormatError(f'unexpected columns {names}')

    body = lines[2] if len(lines) > 2 else ''
    try:
        return csv.read_csv(
            io.BytesIO(f'{lines[1].strip()}\n{body}'.encode('utf-8')),
            convert_options=csv.ConvertOptions(
                column_types={name: pa.float64() for name in names},
                null_values=[],
            ),
        )
    except pa.ArrowInvalid as error:
        raise FormatError(f'malformed table body: {error}') from None


def read_csv(source: Source) -> pa.Table:
    """Inverse of `write_csv`: one float64 column per file column, axis first."""
    return _parse(_read_text(source), SWEEP_HEADER, SWEEP_COLUMNS, first_free=True)


def read_trajectory_csv(source: Source) -> pa.Table:
    return _parse(_read_text(source), TRAJECTORY_HEADER, TRAJECTORY_COLUMNS, first_free=False)
