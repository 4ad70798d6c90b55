"""
Cross-checks the direct stationary solver against long backward-Euler runs.

For the base point of every figure preset, propagates the field-free equilibrium
to `T = 1e6 / gamma` and reports the distance to the direct solution, the trace
drift along the trajectory and the smallest eigenvalue of both generator forms.
"""
from time import perf_counter

import numpy as np

import qwcpt
from qwcpt.solver import EQUILIBRIUM_STATE
from qwcpt.sweep import FIGURES

step, count = 50.0, 20_000
rates = qwcpt.default_rates()

print('curve,distance,trace_drift,min_eigenvalue,min_eigenvalue_consistent')
t1 = perf_counter()

for figure in FIGURES:
    for spec in qwcpt.figure_preset(figure):
        params = spec.params_at(0.0)
        generator = qwcpt.build_liouvillian(params, rates)
        direct = qwcpt.steady_state(generator)
        trajectory = qwcpt.evolve_implicit(generator, EQUILIBRIUM_STATE, step, count)
        consistent = qwcpt.steady_state(qwcpt.build_liouvillian(params, rates, eq13_consistent=True))
        print('{},{:.3e},{:.3e},{:.3e},{:.3e}'.format(
            spec.label,
            np.max(np.abs(trajectory.final - direct.x)),
            np.max(np.abs(trajectory.traces() - 1)),
            direct.min_eigenvalue,
            consistent.min_eigenvalue,
        ))

t2 = perf_counter()
print('Elapsed time: {:.3f}s'.format(t2 - t1))
