import math
from dataclasses import replace

import pytest
import numpy as np

from qwcpt.errors import InvalidParams, NotHermitian
from qwcpt.model import (
    COUNT_COMPONENTS, DriveParams, RateSet, build_liouvillian, coherence_index,
    default_rates, detunings_from_delta, pack, population_index, unpack,
)


def random_params(rng):
    return DriveParams(
        omega1=rng.uniform(0, 2), omega2=rng.uniform(0, 2), v=rng.uniform(0, 2),
        q=rng.uniform(-1, 1), kappa=rng.uniform(-1, 1),
        delta1=rng.uniform(-1, 1), delta2=rng.uniform(-1, 1),
        big_delta=rng.uniform(0, 4), phi=rng.uniform(-2 * math.pi, 2 * math.pi),
    )


def random_hermitian(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return (a + a.conj().T) / 2


def test_default_rates():
    rates = default_rates()
    assert rates.Gamma34 == 3.41
    assert rates.gamma21 == 2.5e-5
    assert rates.Gamma12 == 4 * 2.5e-5
    assert rates.Gamma13 == rates.Gamma23 == 1.92
    assert rates.Gamma14 == rates.Gamma24 == 1.8


def test_rates_in_si():
    rates = default_rates()
    assert rates.in_si(1.0) == rates.gamma_si
    physical = DriveParams(omega1=0.5, phi=1.0).to_physical(rates)
    assert physical['omega1'] == 0.5 * rates.gamma_si
    assert physical['phi'] == 1.0
    assert physical['q'] == 0.8


def test_detunings():
    assert detunings_from_delta(0) == (0, 0)
    assert detunings_from_delta(0.1) == (0.1, -0.1)
    assert detunings_from_delta(-0.25) == (-0.25, 0.25)
    delta1, delta2 = detunings_from_delta(0.123)
    assert DriveParams(delta1=delta1, delta2=delta2).two_photon_detuning() == 0.123


def test_field_free_entries():
    L = build_liouvillian(DriveParams.field_free(), default_rates()).matrix
    rho33 = population_index(3)
    assert L[rho33, rho33] == pytest.approx(-3.2, abs=1e-15)
    assert L[population_index(1), rho33] == pytest.approx(1.6, abs=1e-15)


def test_tunnel_block():
    params = replace(DriveParams.field_free(), big_delta=1.0)
    L = build_liouvillian(params, default_rates()).matrix
    re34 = coherence_index(3, 4)
    block = L[re34:re34 + 2, re34:re34 + 2]
    # d(Re)/dt = -G Re - 2D Im, d(Im)/dt = 2D Re - G Im
    assert np.allclose(block, [[-3.41, -2.0], [2.0, -3.41]], rtol=0, atol=1e-15)


def test_trace_conservation_example():
    params = DriveParams(
        omega1=0.3, omega2=0.2, v=0.1, q=0.8, kappa=0.8,
        big_delta=1.0, delta1=0.05, delta2=-0.05, phi=1.1,
    )
    L = build_liouvillian(params, default_rates())
    assert L.trace_defect() <= 1e-14


@pytest.mark.parametrize('eq13_consistent', [False, True])
def test_trace_conservation_random(eq13_consistent):
    rng = np.random.default_rng(42)
    for _ in range(100):
        L = build_liouvillian(random_params(rng), default_rates(), eq13_consistent=eq13_consistent)
        assert L.trace_defect() <= 1e-14


def test_phase_periodicity():
    rng = np.random.default_rng(7)
    for _ in range(20):
        params = random_params(rng)
        shifted = replace(params, phi=params.phi + 2 * math.pi)
        a = build_liouvillian(params, default_rates()).matrix
        b = build_liouvillian(shifted, default_rates()).matrix
        assert np.max(np.abs(a - b)) <= 1e-15


def test_hermiticity_closure():
    rng = np.random.default_rng(3)
    L = build_liouvillian(random_params(rng), default_rates())
    x = pack(random_hermitian(rng))
    derivative = unpack(L.matrix @ x)
    assert np.array_equal(derivative, derivative.conj().T)


def test_variants_differ_only_in_last_term():
    params = DriveParams(omega2=0.5, kappa=0.8)
    verbatim = build_liouvillian(params, default_rates()).matrix
    consistent = build_liouvillian(params, default_rates(), eq13_consistent=True).matrix
    rows, _ = np.nonzero(verbatim != consistent)
    assert set(rows) <= {coherence_index(3, 4), coherence_index(3, 4) + 1}
    assert not np.array_equal(verbatim, consistent)


def test_deterministic():
    params = DriveParams(phi=0.7, delta1=0.01, delta2=-0.01)
    a = build_liouvillian(params, default_rates())
    b = build_liouvillian(params, default_rates())
    assert a.matrix.tobytes() == b.matrix.tobytes()
    assert np.asarray(a).shape == (COUNT_COMPONENTS, COUNT_COMPONENTS)


def test_invalid_params():
    with pytest.raises(InvalidParams):
        build_liouvillian(DriveParams(omega1=math.nan), default_rates())
    with pytest.raises(InvalidParams):
        build_liouvillian(DriveParams(phi=math.inf), default_rates())
    with pytest.raises(InvalidParams):
        build_liouvillian(DriveParams(v=-0.1), default_rates())
    with pytest.raises(InvalidParams):
        build_liouvillian(DriveParams(), replace(default_rates(), Gamma13=-1.0))


def test_pack_unpack():
    x = pack(np.eye(4) / 4)
    assert np.array_equal(x, [0.25] * 4 + [0.0] * 12)

    x = np.zeros(COUNT_COMPONENTS)
    x[:2] = 0.5
    x[coherence_index(1, 3)] = 0.1
    rho = unpack(x)
    assert rho[0, 2] == 0.1 and rho[2, 0] == 0.1

    rng = np.random.default_rng(11)
    for _ in range(10):
        rho = random_hermitian(rng)
        assert np.array_equal(unpack(pack(rho)), rho)
        assert np.array_equal(pack(unpack(pack(rho))), pack(rho))


def test_pack_rejects():
    rho = np.eye(4, dtype=complex)
    rho[0, 1] = 1e-6
    with pytest.raises(NotHermitian):
        pack(rho)
    with pytest.raises(NotHermitian):
        pack(np.eye(3))


def test_zero_rates():
    rates = RateSet.zeros()
    assert rates.Gamma34 == 0 and rates.gamma_si == RateSet.gamma_si
    L = build_liouvillian(DriveParams.field_free(), rates)
    assert not L.matrix.any()
