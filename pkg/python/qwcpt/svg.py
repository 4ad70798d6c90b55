"""
    Minimal line charts of sweep columns as standalone SVG 1.1 documents.
    Output depends only on the data, so identical sweeps give identical bytes.
"""

import os
import xml.etree.ElementTree as ET
from typing import List, Sequence, Tuple

import numpy as np

from qwcpt.errors import EmptySelection, GridTooSmall
from qwcpt.observables import COLUMN_FIELDS, COLUMN_NAMES
from qwcpt.sweep import SweepResult
from qwcpt.tables import Sink, atomic_write

WIDTH: int = 640
HEIGHT: int = 400
PADDING_LEFT: int = 70
PADDING_RIGHT: int = 20
PADDING_TOP: int = 30
PADDING_BOTTOM: int = 45
MARGIN_FRACTION: float = 0.05
COUNT_TICKS: int = 5
PALETTE: Tuple[str, ...] = ('#1f77b4', '#d62728', '#2ca02c', '#ff7f0e', '#9467bd', '#8c564b', '#17becf')

DEFAULT_COLUMNS: Tuple[str, ...] = ('p11_p22', 'p33', 'p44', 'p33_p44')


def _extent(values: np.ndarray) -> Tuple[float, float]:
    low, high = float(values.min()), float(values.max())
    span = high - low
    if span == 0:
        span = abs(high) or 1.0
        low, high = low - span / 2, high + span / 2
    return low - MARGIN_FRACTION * span, high + MARGIN_FRACTION * span


def _scale(value: float, low: float, high: float, start: float, stop: float) -> float:
    return start + (value - low) / (high - low) * (stop - start)


def _coordinate(value: float) -> str:
    return f'{value:.2f}'


def _document(result: SweepResult, columns: Sequence[str]) -> ET.Element:
    x = result.axis
    series = [result.column(name) for name in columns]
    x_low, x_high = _extent(x)
    y_low, y_high = _extent(np.concatenate(series))
    left, right = PADDING_LEFT, WIDTH - PADDING_RIGHT
    top, bottom = PADDING_TOP, HEIGHT - PADDING_BOTTOM

    root = ET.Element(
        'svg', xmlns='http://www.w3.org/2000/svg', version='1.1',
        width=str(WIDTH), height=str(HEIGHT), viewBox=f'0 0 {WIDTH} {HEIGHT}',
    )
    ET.SubElement(
        root, 'rect', x=str(left), y=str(top), width=str(right - left), height=str(bottom - top),
        fill='none', stroke='#000000',
    )

    axes = ET.SubElement(root, 'g', attrib={'font-family': 'sans-serif', 'font-size': '11'})
    for tick in np.linspace(x_low, x_high, COUNT_TICKS):
        position = _coordinate(_scale(tick, x_low, x_high, left, right))
        ET.SubElement(axes, 'line', x1=position, y1=str(bottom), x2=position, y2=str(bottom + 5), stroke='#000000')
        label = ET.SubElement(axes, 'text', x=position, y=str(bottom + 18), attrib={'text-anchor': 'middle'})
        label.text = f'{tick:.3g}'
    for tick in np.linspace(y_low, y_high, COUNT_TICKS):
        position = _coordinate(_scale(tick, y_low, y_high, bottom, top))
        ET.SubElement(axes, 'line', x1=str(left - 5), y1=position, x2=str(left), y2=position, stroke='#000000')
        label = ET.SubElement(axes, 'text', x=str(left - 8), y=position, attrib={'text-anchor': 'end'})
        label.text = f'{tick:.3g}'
    axis_label = ET.SubElement(axes, 'text', x=_coordinate((left + right) / 2), y=str(HEIGHT - 8),
                            attrib={'text-anchor': 'middle'})
    axis_label.text = result.spec.param.value

    for index, (name, values) in enumerate(zip(columns, series)):
        points = ' '.join(
            f'{_coordinate(_scale(px, x_low, x_high, left, right))},{_coordinate(_scale(py, y_low, y_high, bottom, top))}'
            for px, py in zip(x, values)
        )
        color = PALETTE[index % len(PALETTE)]
        ET.SubElement(root, 'polyline', points=points, fill='none', stroke=color, attrib={'stroke-width': '1.5'})
        legend = ET.SubElement(root, 'text', x=str(left + 8), y=str(top + 14 + 14 * index), fill=color,
                               attrib={'font-family': 'sans-serif', 'font-size': '11'})
        legend.text = name

    if result.spec.label:
        title = ET.SubElement(root, 'text', x=_coordinate((left + right) / 2), y=str(top - 10),
                              attrib={'text-anchor': 'middle', 'font-family': 'sans-serif', 'font-size': '13'})
        title.text = result.spec.label
    return root


def render_svg(result: SweepResult, columns: Sequence[str] = DEFAULT_COLUMNS) -> str:
    selected: List[str] = list(columns)
    if not selected:
        raise EmptySelection('no columns selected for plotting')
    unknown = [name for name in selected if name not in COLUMN_FIELDS]
    if unknown:
        raise EmptySelection(f'unknown columns {unknown}, expected some of {list(COLUMN_NAMES)}')
    if len(result.axis) < 2:
        raise GridTooSmall(f'need at least 2 points to draw a line, got {len(result.axis)}')
    document = ET.tostring(_document(result, selected), encoding='unicode')
    return f'<?xml version="1.0" encoding="UTF-8"?>\n{document}\n'


def emit_svg(result: SweepResult, columns: Sequence[str], sink: Sink) -> None:
    content = render_svg(result, columns)
    if isinstance(sink, (str, os.PathLike)):
        atomic_write(sink, content)
    else:
        sink.write(content)
