import json
import logging

import pytest
import numpy as np

from qwcpt.cli import EXIT_CONFIGURATION, EXIT_DEGENERATE, EXIT_FILESYSTEM, EXIT_OK, run_cli
from qwcpt.tables import SWEEP_COLUMNS, SWEEP_HEADER, TRAJECTORY_HEADER, read_csv, read_trajectory_csv

FIG2_FILES = ['fig2_phi0.csv', 'fig2_phi0.25pi.csv', 'fig2_phi0.5pi.csv']


def write_config(path, **values):
    path.write_text(json.dumps(values))
    return str(path)


@pytest.fixture(scope='module')
def fig2_directory(tmp_path_factory):
    directory = tmp_path_factory.mktemp('fig2')
    assert run_cli(['fig', '2', '--out', str(directory), '--svg']) == EXIT_OK
    return directory


def test_fig_files(fig2_directory):
    names = sorted(path.name for path in fig2_directory.iterdir())
    assert names == sorted(FIG2_FILES + [name.replace('.csv', '.svg') for name in FIG2_FILES])
    for name in FIG2_FILES:
        table = read_csv(fig2_directory / name)
        assert table.num_rows == 1001
        assert table.column_names[0] == 'delta'


def test_fig_dip_in_middle(fig2_directory):
    curve = read_csv(fig2_directory / 'fig2_phi0.csv').column('p33_p44').to_numpy()
    assert len(curve) // 3 <= np.argmin(curve) < 2 * len(curve) // 3


def test_fig_byte_identical(fig2_directory, tmp_path):
    assert run_cli(['fig', 'fig2', '--out', str(tmp_path), '--svg']) == EXIT_OK
    for path in fig2_directory.iterdir():
        assert (tmp_path / path.name).read_bytes() == path.read_bytes()


def test_metrics(fig2_directory, capsys):
    assert run_cli(['metrics', str(fig2_directory / 'fig2_phi0.csv')]) == EXIT_OK
    header, values = capsys.readouterr().out.strip().split('\n')
    assert header == 'contrast,fwhm,dip_position'
    contrast, fwhm, dip_position = map(float, values.split(','))
    assert contrast > 0
    assert fwhm > 0
    assert abs(dip_position) <= 1e-3 + 1e-12


def test_steady(capsys):
    assert run_cli(['steady']) == EXIT_OK
    lines = capsys.readouterr().out.strip().split('\n')
    assert lines[0] == SWEEP_HEADER
    assert len(lines) == 3
    names, values = lines[1].split(','), [float(value) for value in lines[2].split(',')]
    row = dict(zip(names, values))
    assert row['p11_p22'] > 0.9
    assert row['residual'] <= 1e-10


def test_sweep_phase_without_coupling(tmp_path, capsys):
    config = write_config(tmp_path / 'run.json', v=0)
    argv = ['sweep', '--config', config, '--param', 'phi', '--from', '0', '--to', '6.2831853', '--points', '5']
    assert run_cli(argv) == EXIT_OK
    lines = capsys.readouterr().out.strip().split('\n')
    assert lines[1].split(',')[0] == 'phi'
    rows = np.array([[float(value) for value in line.split(',')[1:-1]] for line in lines[2:]])
    assert rows.shape == (5, 7)
    assert np.max(np.abs(rows - rows[0])) <= 1e-10


def test_sweep_to_files(tmp_path):
    out = tmp_path / 'phase.csv'
    argv = ['sweep', '--param', 'phi', '--from', '0', '--to', '2pi', '--points', '9', '--out', str(out), '--svg']
    assert run_cli(argv) == EXIT_OK
    assert read_csv(out).num_rows == 9
    assert (tmp_path / 'phase.svg').read_text().count('<polyline') == 4


def test_evolve(tmp_path):
    out = tmp_path / 'trajectory.csv'
    assert run_cli(['evolve', '--step', '100', '--steps', '50', '--out', str(out)]) == EXIT_OK
    assert out.read_text().startswith(TRAJECTORY_HEADER)
    assert read_trajectory_csv(out).num_rows == 51


def test_configuration_errors(tmp_path, capsys):
    assert run_cli([]) == EXIT_CONFIGURATION
    assert run_cli(['fig', '9']) == EXIT_CONFIGURATION
    assert run_cli(['sweep', '--points', '1']) == EXIT_CONFIGURATION
    assert run_cli(['sweep', '--param', 'gamma']) == EXIT_CONFIGURATION
    assert run_cli(['sweep', '--svg']) == EXIT_CONFIGURATION
    assert run_cli(['steady', '--config', write_config(tmp_path / 'bad.json', omega3=1)]) == EXIT_CONFIGURATION
    (tmp_path / 'broken.json').write_text('{"phi": }')
    assert run_cli(['steady', '--config', str(tmp_path / 'broken.json')]) == EXIT_CONFIGURATION
    assert 'omega3' in capsys.readouterr().err


def test_degenerate_exit(tmp_path, capsys):
    rates = {name: 0 for name in ('gamma21', 'gamma31', 'gamma32', 'gamma41', 'gamma42',
                                  'Gamma12', 'Gamma13', 'Gamma14', 'Gamma23', 'Gamma24', 'Gamma34')}
    config = write_config(tmp_path / 'frozen.json', omega1=0, omega2=0, v=0, big_delta=0, **rates)
    assert run_cli(['steady', '--config', config]) == EXIT_DEGENERATE
    captured = capsys.readouterr()
    assert captured.out == ''
    assert 'singular' in captured.err


def test_filesystem_exit(tmp_path):
    assert run_cli(['steady', '--config', str(tmp_path / 'missing.json')]) == EXIT_FILESYSTEM


def test_fig_positivity_warnings(tmp_path, caplog):
    caplog.set_level(logging.WARNING, logger='qwcpt.solver')
    assert run_cli(['fig', '2', '--out', str(tmp_path), '--points', '201']) == EXIT_OK
    messages = [record.getMessage() for record in caplog.records if record.name == 'qwcpt.solver']
    assert any(message.startswith('fig2_phi0.25pi at delta=') for message in messages)
    for label in ('fig2_phi0', 'fig2_phi0.25pi', 'fig2_phi0.5pi'):
        assert sum(message.startswith(f'{label} at ') for message in messages) <= 1


def test_fig_without_positivity(tmp_path, caplog):
    caplog.set_level(logging.WARNING, logger='qwcpt.solver')
    assert run_cli(['fig', '2', '--out', str(tmp_path), '--points', '21', '--no-positivity']) == EXIT_OK
    assert [record for record in caplog.records if record.name == 'qwcpt.solver'] == []


def test_metrics_non_numeric(tmp_path):
    path = tmp_path / 'broken.csv'
    path.write_text(f'{SWEEP_HEADER}\ndelta,{",".join(SWEEP_COLUMNS)}\n' + ','.join(['abc'] + ['0'] * 8) + '\n')
    assert run_cli(['metrics', str(path)]) == EXIT_CONFIGURATION


def test_undecodable_config(tmp_path, capsys):
    path = tmp_path / 'latin1.json'
    path.write_bytes(b'{"phi": "\xff"}')
    assert run_cli(['steady', '--config', str(path)]) == EXIT_CONFIGURATION
    assert 'UTF-8' in capsys.readouterr().err
