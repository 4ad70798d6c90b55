import math

import pytest

from qwcpt.config import KNOWN_KEYS, load_config, parse_config, parse_number
from qwcpt.errors import ConfigurationError, ParseError, RangeError, UnknownKey
from qwcpt.model import DriveParams, default_rates
from qwcpt.sweep import SweepParameter


def test_defaults():
    for text in ('', '{}', '  \n'):
        config = parse_config(text)
        assert config.drive == DriveParams(omega1=0.25, omega2=0.25, v=0.25, big_delta=1.0, q=0.8, kappa=0.8)
        assert config.drive.phi == 0 and config.drive.two_photon_detuning() == 0
        assert config.rates == default_rates()
        assert config.sweep is None
        assert not config.eq13_consistent and not config.emit_svg
        assert config.output_path == ''


def test_phase_literals():
    assert parse_config('{"phi": "0.5pi"}').drive.phi == 0.5 * math.pi
    assert parse_config('{"phi": "pi"}').drive.phi == math.pi
    assert parse_config('{"phi": "-2*pi"}').drive.phi == -2 * math.pi
    assert parse_config('{"phi": 1.25}').drive.phi == 1.25
    assert parse_number('stop', '2pi') == 2 * math.pi
    assert parse_number('start', '1e-3') == 1e-3
    assert parse_config('{"phi": "-pi"}').drive.phi == -math.pi
    assert parse_config('{"phi": "+pi"}').drive.phi == math.pi
    assert parse_number('start', '-pi') == -math.pi


def test_pi_only_for_phases():
    with pytest.raises(ParseError):
        parse_config('{"v": "2pi"}')


def test_bad_number():
    with pytest.raises(ParseError) as error:
        parse_config('{\n  "omega1": "abc"\n}')
    assert (error.value.line, error.value.column) == (2, 3)
    with pytest.raises(ParseError):
        parse_config('{"q": true}')
    with pytest.raises(ParseError):
        parse_config('{"q": [1]}')


def test_position_skips_matching_values():
    with pytest.raises(ParseError) as error:
        parse_config('{"output_path": "omega1",\n "omega1": "abc"}')
    assert (error.value.line, error.value.column) == (2, 2)


def test_undecodable_file(tmp_path):
    path = tmp_path / 'latin1.json'
    path.write_bytes(b'{\n  "phi": "\xff"}')
    with pytest.raises(ParseError) as error:
        load_config(str(path))
    assert (error.value.line, error.value.column) == (2, 11)


def test_load_config(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text('{"v": 0.5}', encoding='utf-8')
    assert load_config(str(path)).drive.v == 0.5


def test_syntax_error_position():
    with pytest.raises(ParseError) as error:
        parse_config('{"omega1": 0.3,\n "v": }')
    assert error.value.line == 2
    with pytest.raises(ParseError):
        parse_config('[1, 2]')


def test_unknown_key():
    with pytest.raises(UnknownKey):
        parse_config('{"omega3": 1}')
    assert isinstance(UnknownKey('x'), ConfigurationError)


def test_ranges():
    with pytest.raises(RangeError):
        parse_config('{"count": 1}')
    with pytest.raises(RangeError):
        parse_config('{"start": 1, "stop": 0}')
    with pytest.raises(RangeError):
        parse_config('{"omega1": -0.1}')
    with pytest.raises(RangeError):
        parse_config('{"Gamma34": -1}')
    with pytest.raises(RangeError):
        parse_config('{"param": "temperature"}')
    with pytest.raises(RangeError):
        parse_config('{"phi": "inf"}')
    with pytest.raises(ParseError):
        parse_config('{"count": 2.5}')


def test_delta_shorthand():
    config = parse_config('{"delta": 0.1}')
    assert (config.drive.delta1, config.drive.delta2) == (0.1, -0.1)
    config = parse_config('{"delta": 0.1, "delta2": 0.0}')
    assert (config.drive.delta1, config.drive.delta2) == (0.1, 0.0)


def test_full_document():
    text = '''{
        "omega1": 0.25, "omega2": 0.75, "v": 0.25, "q": 1, "kappa": 1,
        "big_delta": 1, "phi": "0.25pi", "Gamma12": 2e-4,
        "param": "phi", "start": 0, "stop": "2pi", "count": 9,
        "eq13_consistent": true, "output_path": "run.csv", "emit_svg": true
    }'''
    config = parse_config(text)
    assert config.drive.omega2 == 0.75 and config.drive.phi == math.pi / 4
    assert config.rates.Gamma12 == 2e-4
    assert config.sweep.param is SweepParameter.phi
    assert config.sweep.stop == 2 * math.pi and config.sweep.count == 9
    assert config.eq13_consistent and config.emit_svg
    assert config.output_path == 'run.csv'

    spec = config.sweep_spec(label='phase')
    assert spec.label == 'phase' and spec.eq13_consistent
    assert spec.axis()[-1] == 2 * math.pi


def test_known_keys_cover_fields():
    for name in ('omega1', 'gamma21', 'Gamma34', 'param', 'count', 'delta', 'emit_svg', 'output_path'):
        assert name in KNOWN_KEYS
