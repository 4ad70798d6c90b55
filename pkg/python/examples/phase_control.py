"""
Switches the dark resonance on and off with the phase of the closed loop.

Scans the two-photon detuning for several loop phases at the `fig2` parameters,
prints the contrast and width of the excited-state dip for each phase,
and plots the excited-state populations of all curves into one directory.

## Usage

    python python/examples/phase_control.py plots/
"""
import os
import sys
import math
from time import perf_counter

import numpy as np

import qwcpt
from qwcpt.sweep import with_value

directory = sys.argv[1] if len(sys.argv) > 1 else 'phase_control'
os.makedirs(directory, exist_ok=True)

base = qwcpt.figure_preset('fig2')[0].base
phases = np.linspace(0, math.pi, 9)

t1 = perf_counter()

print('phi/pi,contrast,fwhm,p11_p22_at_resonance')
for phi in phases:
    spec = qwcpt.SweepSpec(
        base=with_value(base, qwcpt.SweepParameter.phi, phi),
        label=f'phi{phi / math.pi:.3f}pi', count=501)
    sweep = qwcpt.sweep_1d(spec)
    metrics = qwcpt.resonance_metrics(sweep.axis, sweep.column('p33_p44'))
    center = sweep.rows[len(sweep.rows) // 2]
    print('{:.3f},{:.6f},{:.6f},{:.6f}'.format(phi / math.pi, metrics.contrast, metrics.fwhm, center.p11_p22))
    qwcpt.emit_svg(sweep, ['p33', 'p44', 'p33_p44'], os.path.join(directory, f'{spec.label}.svg'))

t2 = perf_counter()

print('Elapsed time for {} sweeps: {:.3f}s'.format(len(phases), t2 - t1), file=sys.stderr)
