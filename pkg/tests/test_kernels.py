import numpy as np
import pytest

from djcm import _kernels, backend
from djcm.dynamics import EXCITED, amplitudes_ode
from djcm.model import SectorCoefficients, sector_coefficients

from test_model import fig_params


def test_select_integrator_names():
    assert _kernels.select_integrator("numpy") is _kernels.integrate_sector_numpy
    with pytest.raises(ValueError):
        _kernels.select_integrator("fortran")
    if backend.HAVE_NUMBA:
        assert _kernels.select_integrator("numba") is _kernels.integrate_sector_numba
    assert _kernels.select_integrator(None) is _kernels.select_integrator(backend.ACTIVE)


@pytest.mark.skipif(not backend.HAVE_NUMBA, reason="numba not importable")
def test_numba_and_numpy_backends_agree():
    p = fig_params(omega_e=0.08, g1=0.06, g2=0.08, chi=0.2)
    coeffs = sector_coefficients(p)
    t = np.linspace(0.0, 200.0, 500)
    a = amplitudes_ode(coeffs, p.omega_e, EXCITED, t, backend="numba")
    b = amplitudes_ode(coeffs, p.omega_e, EXCITED, t, backend="numpy")
    assert np.max(np.abs(a.amplitudes - b.amplitudes)) <= 1e-13


def test_grid_density_does_not_change_the_solution():
    p = fig_params(g1=0.06, g2=0.08, chi=0.2)
    coeffs = sector_coefficients(p)
    coarse = amplitudes_ode(coeffs, p.omega_e, EXCITED, np.array([0.0, 50.0]))
    fine = amplitudes_ode(coeffs, p.omega_e, EXCITED, np.linspace(0.0, 50.0, 101))
    assert np.max(np.abs(coarse.amplitudes[-1] - fine.amplitudes[-1])) <= 1e-9


def test_single_point_grid():
    coeffs = SectorCoefficients(h=0.0, s=0.1, nu=0.1, v1=0.05, v2=0.05, n=1)
    traj = amplitudes_ode(coeffs, 0.0, EXCITED, np.array([0.0]))
    assert len(traj) == 1
    assert traj.amplitudes[0, 1] == 1.0 + 0j


def test_kernel_status_underflow_direct():
    kernel = _kernels.select_integrator("numpy")
    times = np.array([0.0, 1.0])
    _, status, _, _ = kernel(times, 0j, 1 + 0j, 0j, 0.0, 0.0, 0.0, 1e15, 1e15, 0.0, 1e-10, 1e-10)
    assert status == _kernels.STATUS_UNDERFLOW


def test_kernel_counts_steps():
    kernel = _kernels.select_integrator("numpy")
    times = np.linspace(0.0, 100.0, 11)
    out, status, nacc, nrej = kernel(
        times, 0j, 1 + 0j, 0j, 0.28, 0.38, 0.1, 0.11, 0.15, 0.04, 1e-10, 1e-10
    )
    assert status == _kernels.STATUS_OK
    assert nacc >= 10
    assert np.all(np.isfinite(out))
