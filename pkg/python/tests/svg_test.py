import io
import xml.etree.ElementTree as ET

import pytest
import numpy as np

from qwcpt.errors import EmptySelection, GridTooSmall
from qwcpt.observables import ObservableRow
from qwcpt.svg import emit_svg, render_svg
from qwcpt.sweep import SweepResult, SweepSpec, figure_preset, sweep_1d

NAMESPACE = '{http://www.w3.org/2000/svg}'


def constant_result(count):
    spec = SweepSpec(count=max(count, 2))
    row = ObservableRow(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    return SweepResult(spec=spec, axis=np.linspace(-0.5, 0.5, count), rows=(row,) * count)


def polylines(document):
    root = ET.fromstring(document.split('\n', 1)[1])
    return root.findall(f'{NAMESPACE}polyline')


def test_single_polyline():
    document = render_svg(constant_result(2), ['p11_p22'])
    assert document.startswith('<?xml version="1.0" encoding="UTF-8"?>\n<svg')
    lines = polylines(document)
    assert len(lines) == 1
    assert len(lines[0].get('points').split()) == 2


def test_one_polyline_per_column():
    result = sweep_1d(SweepSpec(count=11))
    lines = polylines(render_svg(result, ['p33', 'p44', 'absorption_probe']))
    assert len(lines) == 3
    assert all(len(line.get('points').split()) == 11 for line in lines)
    assert len({line.get('stroke') for line in lines}) == 3


def test_deterministic(tmp_path):
    spec = figure_preset('fig2', count=21)[0]
    first, second = tmp_path / 'a.svg', tmp_path / 'b.svg'
    emit_svg(sweep_1d(spec), ['p33_p44'], first)
    emit_svg(sweep_1d(spec), ['p33_p44'], second)
    assert first.read_bytes() == second.read_bytes()


def test_stream_sink():
    buffer = io.StringIO()
    emit_svg(constant_result(3), ['p33'], buffer)
    assert buffer.getvalue() == render_svg(constant_result(3), ['p33'])


def test_points_inside_frame():
    result = sweep_1d(SweepSpec(count=7))
    for line in polylines(render_svg(result, ['p33_p44'])):
        for point in line.get('points').split():
            x, y = map(float, point.split(','))
            assert 70 <= x <= 620 and 30 <= y <= 355


def test_selection_errors():
    with pytest.raises(EmptySelection):
        render_svg(constant_result(3), [])
    with pytest.raises(EmptySelection):
        render_svg(constant_result(3), ['p55'])
    with pytest.raises(GridTooSmall):
        render_svg(constant_result(1), ['p33'])
