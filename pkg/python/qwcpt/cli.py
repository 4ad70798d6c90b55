"""
    Command-line front end.

    qwcpt steady  [--config run.json]
    qwcpt sweep   --param phi --from 0 --to 2pi --points 9 --out phi.csv --svg
    qwcpt evolve  --step 50 --steps 20000 --out trajectory.csv
    qwcpt fig 2   --out figures/ --svg
    qwcpt metrics figures/fig2_phi0.csv

Data goes to --out or stdout, diagnostics to stderr.
Exit codes: 0 success, 1 filesystem failure, 2 bad configuration, 3 degenerate system.
"""

import os
import sys
import logging
import argparse
from dataclasses import replace
from typing import List, Optional, Sequence

import numpy as np

from qwcpt.config import RunConfig, SweepFields, load_config, parse_config, parse_number
from qwcpt.errors import ConfigurationError, SolverError
from qwcpt.model import build_liouvillian
from qwcpt.observables import observables_of, resonance_metrics
from qwcpt.solver import EQUILIBRIUM_STATE, check_positivity, evolve_implicit, positivity_gate, steady_state
from qwcpt.svg import DEFAULT_COLUMNS, emit_svg
from qwcpt.sweep import SweepParameter, SweepResult, SweepSpec, figure_preset, sweep_1d
from qwcpt.tables import NUMBER_FORMAT, read_csv, write_csv, write_trajectory_csv

logger = logging.getLogger('qwcpt')

EXIT_OK: int = 0
EXIT_FILESYSTEM: int = 1
EXIT_CONFIGURATION: int = 2
EXIT_DEGENERATE: int = 3


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as configuration errors instead of exiting."""

    def error(self, message):
        raise ConfigurationError(message)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='flat JSON run configuration')
    common.add_argument('--out', help='output file, or directory for `fig`')
    common.add_argument('--svg', action='store_true', help='also write an SVG plot next to each CSV')
    common.add_argument('--columns', help='comma-separated observables to plot')
    common.add_argument('--eq13-consistent', action='store_true',
                        help='use Omega2 instead of kappa*Omega2 in the rho32 term of the rho34 equation')
    common.add_argument('--points', type=int, help='grid points of the sweep')
    common.add_argument('--from', dest='start', help='first grid value, `pi` multipliers allowed')
    common.add_argument('--to', dest='stop', help='last grid value, `pi` multipliers allowed')
    common.add_argument('--param', help='swept parameter: ' + ', '.join(p.value for p in SweepParameter))
    common.add_argument('--no-positivity', dest='positivity', action='store_false',
                        help='skip the density-matrix positivity check')
    common.add_argument('-v', '--verbose', action='store_true', help='debug logging')

    parser = _Parser(prog='qwcpt', description='Dark resonances in tunneling-coupled quantum wells.')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)
    commands.add_parser('steady', parents=[common], help='observables at a single parameter point')
    commands.add_parser('sweep', parents=[common], help='one-dimensional parameter sweep')
    evolve = commands.add_parser('evolve', parents=[common], help='backward-Euler trajectory')
    evolve.add_argument('--step', type=float, default=50.0, help='step in units of 1/gamma')
    evolve.add_argument('--steps', type=int, default=20000, help='number of steps')
    fig = commands.add_parser('fig', parents=[common], help='curves of a figure preset')
    fig.add_argument('figure', help='figure number, 2 to 8')
    fig.add_argument('--omega2', type=float, help='optical Rabi frequency override for figure 8')
    metrics = commands.add_parser('metrics', parents=[common], help='dark-resonance metrics of a sweep CSV')
    metrics.add_argument('csv', help='CSV written by `sweep` or `fig`')
    return parser


def _configure_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger.handlers[:] = [handler]
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _load_config(args: argparse.Namespace) -> RunConfig:
    if args.config:
        config = load_config(args.config)
    else:
        config = parse_config('')

    if args.eq13_consistent:
        config = replace(config, eq13_consistent=True)
    if args.out:
        config = replace(config, output_path=args.out)
    if args.svg:
        config = replace(config, emit_svg=True)

    sweep = config.sweep or SweepFields()
    if args.param is not None:
        sweep = replace(sweep, param=SweepParameter.parse(args.param))
    if args.start is not None:
        sweep = replace(sweep, start=parse_number('start', args.start))
    if args.stop is not None:
        sweep = replace(sweep, stop=parse_number('stop', args.stop))
    if args.points is not None:
        sweep = replace(sweep, count=args.points)
    return replace(config, sweep=sweep)


def _columns(args: argparse.Namespace) -> List[str]:
    if not args.columns:
        return list(DEFAULT_COLUMNS)
    return [name.strip() for name in args.columns.split(',') if name.strip()]


def _svg_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + '.svg'


def _write_sweep(result: SweepResult, path: str, svg: bool, columns: Sequence[str]) -> None:
    if path:
        write_csv(result, path)
        if svg:
            emit_svg(result, columns, _svg_path(path))
    else:
        if svg:
            raise ConfigurationError('--svg needs --out')
        write_csv(result, sys.stdout)


def _steady(config: RunConfig, args: argparse.Namespace) -> None:
    if config.emit_svg:
        raise ConfigurationError('a single point cannot be plotted')
    generator = build_liouvillian(config.drive, config.rates, eq13_consistent=config.eq13_consistent)
    result = steady_state(generator)
    if args.positivity:
        check_positivity(result, positivity_gate(generator))
    spec = SweepSpec(base=config.drive, rates=config.rates, eq13_consistent=config.eq13_consistent)
    point = SweepResult(
        spec=spec,
        axis=np.array([config.drive.two_photon_detuning()]),
        rows=(observables_of(result.x, result.residual_inf),),
    )
    _write_sweep(point, config.output_path, False, ())


def _sweep(config: RunConfig, args: argparse.Namespace) -> None:
    result = sweep_1d(config.sweep_spec(label='sweep'), positivity=args.positivity)
    _write_sweep(result, config.output_path, config.emit_svg, _columns(args))


def _evolve(config: RunConfig, args: argparse.Namespace) -> None:
    generator = build_liouvillian(config.drive, config.rates, eq13_consistent=config.eq13_consistent)
    trajectory = evolve_implicit(generator, EQUILIBRIUM_STATE, args.step, args.steps)
    write_trajectory_csv(trajectory, config.output_path or sys.stdout)


def _fig(config: RunConfig, args: argparse.Namespace) -> None:
    sweep = config.sweep or SweepFields()
    specs = figure_preset(
        args.figure, start=sweep.start, stop=sweep.stop, count=sweep.count,
        eq13_consistent=config.eq13_consistent, omega2=args.omega2, rates=config.rates,
    )
    directory = config.output_path or '.'
    os.makedirs(directory, exist_ok=True)
    for spec in specs:
        logger.info('Running preset curve %s', spec.label)
        result = sweep_1d(spec, positivity=args.positivity)
        _write_sweep(result, os.path.join(directory, f'{spec.label}.csv'), config.emit_svg, _columns(args))


def _metrics(config: RunConfig, args: argparse.Namespace) -> None:
    table = read_csv(args.csv)
    metrics = resonance_metrics(table.column(0).to_numpy(), table.column('p33_p44').to_numpy())
    values = (metrics.contrast, metrics.fwhm, metrics.dip_position)
    sys.stdout.write('contrast,fwhm,dip_position\n')
    sys.stdout.write(','.join(NUMBER_FORMAT % value for value in values) + '\n')


_COMMANDS = {
    'steady': _steady,
    'sweep': _sweep,
    'evolve': _evolve,
    'fig': _fig,
    'metrics': _metrics,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except ConfigurationError as error:
        sys.stderr.write(f'qwcpt: {error}\n')
        return EXIT_CONFIGURATION
    _configure_logging(args.verbose)

    try:
        config = _load_config(args)
        _COMMANDS[args.command](config, args)
    except ConfigurationError as error:
        logger.error('%s', error)
        return EXIT_CONFIGURATION
    except SolverError as error:
        logger.error('%s', error)
        return EXIT_DEGENERATE
    except OSError as error:
        logger.error('%s', error)
        return EXIT_FILESYSTEM
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())
