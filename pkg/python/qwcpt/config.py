"""
    Run configuration documents: one flat JSON object whose keys name
    drive parameters, rates, sweep bounds and output options.

    {"omega1": 0.25, "phi": "0.5pi", "param": "delta", "count": 501}
"""

import re
import json
import math
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Optional, Tuple

from qwcpt.errors import InvalidParams, ParseError, RangeError, UnknownKey
from qwcpt.model import DriveParams, RateSet, default_rates, detunings_from_delta
from qwcpt.sweep import DEFAULT_COUNT, DEFAULT_START, DEFAULT_STOP, SweepParameter, SweepSpec

DRIVE_KEYS: Tuple[str, ...] = tuple(f.name for f in fields(DriveParams))
RATE_KEYS: Tuple[str, ...] = tuple(f.name for f in fields(RateSet))
SWEEP_KEYS: Tuple[str, ...] = ('param', 'start', 'stop', 'count')
FLAG_KEYS: Tuple[str, ...] = ('eq13_consistent', 'emit_svg')
TEXT_KEYS: Tuple[str, ...] = ('output_path',)
# Two-photon detuning, split into delta1/delta2 unless those are given.
SHORTHAND_KEYS: Tuple[str, ...] = ('delta',)
KNOWN_KEYS: Tuple[str, ...] = DRIVE_KEYS + RATE_KEYS + SWEEP_KEYS + FLAG_KEYS + TEXT_KEYS + SHORTHAND_KEYS

PHASE_KEYS: Tuple[str, ...] = ('phi', 'start', 'stop')
_PI_LITERAL = re.compile(r'^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])?\s*\*?\s*pi\s*$')


@dataclass(frozen=True)
class SweepFields:
    param: SweepParameter = SweepParameter.delta
    start: float = DEFAULT_START
    stop: float = DEFAULT_STOP
    count: int = DEFAULT_COUNT


@dataclass(frozen=True)
class RunConfig:
    drive: DriveParams = field(default_factory=DriveParams)
    rates: RateSet = field(default_factory=default_rates)
    sweep: Optional[SweepFields] = None
    eq13_consistent: bool = False
    output_path: str = ''
    emit_svg: bool = False

    def sweep_spec(self, label: str = '') -> SweepSpec:
        sweep = self.sweep or SweepFields()
        return SweepSpec(
            base=self.drive, rates=self.rates, param=sweep.param,
            start=sweep.start, stop=sweep.stop, count=sweep.count,
            eq13_consistent=self.eq13_consistent, label=label,
        )


def _locate(text: str, key: str) -> Tuple[int, int]:
    found = re.search(re.escape(json.dumps(key)) + r'\s*:', text)
    if found is None:
        return 0, 0
    offset = found.start()
    line = text.count('\n', 0, offset) + 1
    column = offset - (text.rfind('\n', 0, offset) + 1) + 1
    return line, column


def _number(text: str, key: str, value: Any) -> float:
    if isinstance(value, bool):
        raise ParseError(f'{key} must be a number, got {value!r}', *_locate(text, key))
    if isinstance(value, (int, float)):
        number = float(value)
    elif isinstance(value, str):
        match = _PI_LITERAL.match(value) if key in PHASE_KEYS else None
        try:
            if match:
                coefficient = match.group(1) or '1'
                if coefficient in ('+', '-'):
                    coefficient += '1'
                number = float(coefficient) * math.pi
            else:
                number = float(value)
        except ValueError:
            raise ParseError(f'{key} must be numeric, got {value!r}', *_locate(text, key)) from None
    else:
        raise ParseError(f'{key} must be a number, got {value!r}', *_locate(text, key))
    if not math.isfinite(number):
        raise RangeError(f'{key} must be finite, got {value!r}')
    return number


def _flag(text: str, key: str, value: Any) -> bool:
    if not isinstance(value, bool):
        raise ParseError(f'{key} must be true or false, got {value!r}', *_locate(text, key))
    return value


def parse_config(text: str) -> RunConfig:
    """
    Parses and fully defaults a configuration document.
    Unset drive fields take the `fig2` preset values, rates the material defaults.
    """
    try:
        document = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, error.lineno, error.colno) from None
    if not isinstance(document, dict):
        raise ParseError('configuration must be a single object', 1, 1)

    for key in document:
        if key not in KNOWN_KEYS:
            raise UnknownKey(f'unknown configuration key {key!r} at line {_locate(text, key)[0]}')

    drive: Dict[str, float] = {}
    rates: Dict[str, float] = {}
    for key, value in document.items():
        if key in DRIVE_KEYS or key in SHORTHAND_KEYS:
            drive[key] = _number(text, key, value)
        elif key in RATE_KEYS:
            rates[key] = _number(text, key, value)

    if 'delta' in drive:
        delta1, delta2 = detunings_from_delta(drive.pop('delta'))
        drive.setdefault('delta1', delta1)
        drive.setdefault('delta2', delta2)

    try:
        drive_params = replace(DriveParams(), **drive).validate()
        rate_set = replace(default_rates(), **rates).validate()
    except InvalidParams as error:
        raise RangeError(str(error)) from None

    sweep = None
    if any(key in document for key in SWEEP_KEYS):
        defaults = SweepFields()
        param = SweepParameter.parse(document.get('param', defaults.param.value))
        start = _number(text, 'start', document['start']) if 'start' in document else defaults.start
        stop = _number(text, 'stop', document['stop']) if 'stop' in document else defaults.stop
        count = document.get('count', defaults.count)
        if isinstance(count, bool) or not isinstance(count, int):
            raise ParseError(f'count must be an integer, got {count!r}', *_locate(text, 'count'))
        if count < 2:
            raise RangeError(f'count must be >= 2, got {count}')
        if not start < stop:
            raise RangeError(f'start {start} must be below stop {stop}')
        sweep = SweepFields(param=param, start=start, stop=stop, count=count)

    output_path = document.get('output_path', '')
    if not isinstance(output_path, str):
        raise ParseError(f'output_path must be a string, got {output_path!r}', *_locate(text, 'output_path'))

    return RunConfig(
        drive=drive_params,
        rates=rate_set,
        sweep=sweep,
        eq13_consistent=_flag(text, 'eq13_consistent', document.get('eq13_consistent', False)),
        output_path=output_path,
        emit_svg=_flag(text, 'emit_svg', document.get('emit_svg', False)),
    )


def parse_number(key: str, raw: str) -> float:
    """Converts one command-line value, accepting `pi` multipliers for phase keys."""
    return _number('', key, raw)


def load_config(path: str) -> RunConfig:
    """Reads a UTF-8 configuration file, undecodable bytes are reported with their position."""
    with open(path, 'rb') as file:
        raw = file.read()
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as error:
        line = raw.count(b'\n', 0, error.start) + 1
        column = error.start - (raw.rfind(b'\n', 0, error.start) + 1) + 1
        raise ParseError(f'configuration is not valid UTF-8: {error.reason}', line, column) from None
    return parse_config(text)
