"""Time evolution of the three amplitudes of one photon sector.

Two independent routes produce the same trajectory:

* the analytic path inverts the sector's Laplace-domain 3x3 system by a
  pole (residue) expansion over the roots of the characteristic cubic,
  then restores the rotating phases on the second and third amplitudes;
* the oracle path integrates the coupled amplitude ODEs directly with
  an adaptive Dormand-Prince 5(4) scheme.

The analytic path is exact up to root accuracy and is the default; the
ODE path is the fallback for (measure-zero) degenerate-root parameter
sets and the independent cross-check everywhere else.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import ModelParams, SectorCoefficients, sector_coefficients
from .spectrum import CubicRoots, DegenerateRootsError, solve_cubic, theta_poly

__all__ = [
    "METHOD_ANALYTIC",
    "METHOD_ORACLE",
    "StepSizeUnderflowError",
    "InitialCondition",
    "EXCITED",
    "AmplitudeState",
    "Trajectory",
    "sector_matrix",
    "residue_weights",
    "amplitudes_analytic",
    "analytic_trajectory",
    "explicit_excited_amplitudes",
    "amplitudes_ode",
    "solve_sector",
]

METHOD_ANALYTIC = "Analytic"
METHOD_ORACLE = "Oracle"

TOL_NORM = 1e-9


class StepSizeUnderflowError(RuntimeError):
    """The adaptive integrator could not meet its tolerance with any
    representable step size (pathological parameters)."""


@dataclass(frozen=True)
class InitialCondition:
    """Normalized amplitude triple at t = 0; default is the atom entering
    in level |2> with the field in the sector's number state."""

    c1: complex = 0j
    c2: complex = 1.0 + 0j
    c3: complex = 0j

    def __post_init__(self):
        norm = abs(self.c1) ** 2 + abs(self.c2) ** 2 + abs(self.c3) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"initial amplitudes must be normalized, |c|^2 = {norm!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=np.complex128)


EXCITED = InitialCondition()


@dataclass(frozen=True)
class AmplitudeState:
    """Amplitudes of |1,n+1>, |2,n>, |3,n> at one instant."""

    t: float
    c1: complex
    c2: complex
    c3: complex

    def norm_sq(self) -> float:
        return abs(self.c1) ** 2 + abs(self.c2) ** 2 + abs(self.c3) ** 2


@dataclass(frozen=True)
class Trajectory:
    """Sampled sector evolution.

    amplitudes has shape (len(times), 3); method records which route
    produced it.  params is present when the run came from a full
    ModelParams (solve_sector), None for coefficient-level runs.
    """

    times: np.ndarray
    amplitudes: np.ndarray
    coeffs: SectorCoefficients
    omega_e: float
    method: str
    params: ModelParams | None = None
    roots: CubicRoots | None = None

    def __len__(self) -> int:
        return len(self.times)

    def state(self, i: int) -> AmplitudeState:
        c1, c2, c3 = self.amplitudes[i]
        return AmplitudeState(t=float(self.times[i]), c1=complex(c1), c2=complex(c2), c3=complex(c3))

    def __iter__(self):
        return (self.state(i) for i in range(len(self.times)))

    def norm_error(self) -> float:
        """max over samples of | |c1|^2+|c2|^2+|c3|^2 - 1 |."""
        norms = np.sum(np.abs(self.amplitudes) ** 2, axis=1)
        return float(np.max(np.abs(norms - 1.0)))


def _as_grid(times, require_zero_start: bool) -> np.ndarray:
    grid = np.asarray(times, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("time grid must be a non-empty 1-D array")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("time grid must be strictly increasing")
    if require_zero_start and grid[0] != 0.0:
        raise ValueError("time grid must start at t = 0")
    return grid


def sector_matrix(z: complex, coeffs: SectorCoefficients, omega_e: float) -> np.ndarray:
    """Laplace-domain system matrix M(z) of the shifted amplitude triple."""
    return np.array(
        [
            [z, 1j * coeffs.v2, 1j * coeffs.v1],
            [1j * coeffs.v2, z - 1j * coeffs.s, 1j * omega_e],
            [1j * coeffs.v1, 1j * omega_e, z - 1j * coeffs.h],
        ],
        dtype=np.complex128,
    )


def _adjugate3(m: np.ndarray) -> np.ndarray:
    out = np.empty((3, 3), dtype=np.complex128)
    out[0, 0] = m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    out[0, 1] = -(m[0, 1] * m[2, 2] - m[0, 2] * m[2, 1])
    out[0, 2] = m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1]
    out[1, 0] = -(m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
    out[1, 1] = m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
    out[1, 2] = -(m[0, 0] * m[1, 2] - m[0, 2] * m[1, 0])
    out[2, 0] = m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]
    out[2, 1] = -(m[0, 0] * m[2, 1] - m[0, 1] * m[2, 0])
    out[2, 2] = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return out


def residue_weights(
    coeffs: SectorCoefficients, omega_e: float, roots: CubicRoots, ic: InitialCondition
) -> tuple[np.ndarray, np.ndarray]:
    """Pole locations and residue weight vectors of the Laplace inversion.

    Returns (alphas, W) with W[:, j] = adj(M(alpha_j)) @ ic / Theta'(alpha_j);
    the shifted amplitude vector is then sum_j W[:, j] * exp(alpha_j * t).
    """
    poly = theta_poly(coeffs, omega_e)
    ic_vec = ic.as_array()
    alphas = np.array(roots.roots, dtype=np.complex128)
    weights = np.empty((3, 3), dtype=np.complex128)
    for j, alpha in enumerate(roots.roots):
        adj = _adjugate3(sector_matrix(alpha, coeffs, omega_e))
        weights[:, j] = adj @ ic_vec / poly.deriv(alpha)
    return alphas, weights


def _analytic_amplitudes(
    coeffs: SectorCoefficients, omega_e: float, roots: CubicRoots, ic: InitialCondition, times: np.ndarray
) -> np.ndarray:
    alphas, weights = residue_weights(coeffs, omega_e, roots, ic)
    shifted = weights @ np.exp(alphas[:, None] * times[None, :])
    amps = np.empty((times.size, 3), dtype=np.complex128)
    amps[:, 0] = shifted[0]
    amps[:, 1] = np.exp(-1j * coeffs.s * times) * shifted[1]
    amps[:, 2] = np.exp(-1j * coeffs.h * times) * shifted[2]
    # sum_j adj(M(alpha_j)) / Theta'(alpha_j) = I (partial fractions), so the
    # t = 0 sample equals the initial condition exactly; pin it to keep the
    # residue round-off (~1e-33) out of observables that are identically zero.
    zero = times == 0.0
    if np.any(zero):
        amps[zero] = ic.as_array()
    return amps


def amplitudes_analytic(
    coeffs: SectorCoefficients,
    omega_e: float,
    roots: CubicRoots,
    ic: InitialCondition,
    t: float,
) -> AmplitudeState:
    """Closed-form amplitudes at a single time from the residue expansion."""
    amps = _analytic_amplitudes(coeffs, omega_e, roots, ic, np.array([float(t)]))
    c1, c2, c3 = amps[0]
    return AmplitudeState(t=float(t), c1=complex(c1), c2=complex(c2), c3=complex(c3))


def analytic_trajectory(
    coeffs: SectorCoefficients,
    omega_e: float,
    ic: InitialCondition,
    times,
    roots: CubicRoots | None = None,
    params: ModelParams | None = None,
) -> Trajectory:
    """Closed-form trajectory over a strictly increasing time grid."""
    grid = _as_grid(times, require_zero_start=False)
    if roots is None:
        roots = solve_cubic(theta_poly(coeffs, omega_e))
    amps = _analytic_amplitudes(coeffs, omega_e, roots, ic, grid)
    return Trajectory(
        times=grid,
        amplitudes=amps,
        coeffs=coeffs,
        omega_e=omega_e,
        method=METHOD_ANALYTIC,
        params=params,
        roots=roots,
    )


def explicit_excited_amplitudes(
    coeffs: SectorCoefficients, omega_e: float, roots: CubicRoots, t: float
) -> tuple[complex, complex, complex]:
    """Explicit three-pole formulas for the default entry condition (0,1,0).

    Hand-written expansion of the second column of the inverted sector
    matrix; kept separate from the residue machinery so the two can be
    cross-checked term for term.
    """
    al1, al2, al3 = roots.roots
    h, s, v1, v2 = coeffs.h, coeffs.s, coeffs.v1, coeffs.v2
    d1 = (al1 - al2) * (al1 - al3)
    d2 = (al2 - al1) * (al2 - al3)
    d3 = (al3 - al1) * (al3 - al2)
    e1 = cmath.exp(al1 * t)
    e2 = cmath.exp(al2 * t)
    e3 = cmath.exp(al3 * t)

    c1 = -(
        (h * v2 + v1 * omega_e + 1j * al1 * v2) / d1 * e1
        + (h * v2 + v1 * omega_e + 1j * al2 * v2) / d2 * e2
        + (h * v2 + v1 * omega_e + 1j * al3 * v2) / d3 * e3
    )
    c2 = cmath.exp(-1j * s * t) * (
        (al1 * al1 - 1j * h * al1 + v1 * v1) / d1 * e1
        + (al2 * al2 - 1j * h * al2 + v1 * v1) / d2 * e2
        + (al3 * al3 - 1j * h * al3 + v1 * v1) / d3 * e3
    )
    c3 = -cmath.exp(-1j * h * t) * (
        (1j * omega_e * al1 + v1 * v2) / d1 * e1
        + (1j * omega_e * al2 + v1 * v2) / d2 * e2
        + (1j * omega_e * al3 + v1 * v2) / d3 * e3
    )
    return c1, c2, c3


def amplitudes_ode(
    coeffs: SectorCoefficients,
    omega_e: float,
    ic: InitialCondition,
    times,
    rtol: float = 1e-10,
    atol: float = 1e-10,
    backend: str | None = None,
    params: ModelParams | None = None,
) -> Trajectory:
    """Integrate the coupled amplitude ODEs over a grid starting at t = 0."""
    grid = _as_grid(times, require_zero_start=True)
    kernel = _kernels.select_integrator(backend)
    out, status, _, _ = kernel(
        grid,
        complex(ic.c1),
        complex(ic.c2),
        complex(ic.c3),
        float(coeffs.h),
        float(coeffs.s),
        float(coeffs.nu),
        float(coeffs.v1),
        float(coeffs.v2),
        float(omega_e),
        float(rtol),
        float(atol),
    )
    if status == _kernels.STATUS_UNDERFLOW:
        raise StepSizeUnderflowError(
            f"step size underflow while integrating to t = {grid[-1]!r}; "
            "tolerances unreachable for these parameters"
        )
    return Trajectory(
        times=grid,
        amplitudes=out,
        coeffs=coeffs,
        omega_e=omega_e,
        method=METHOD_ORACLE,
        params=params,
    )


def solve_sector(
    params: ModelParams,
    times,
    ic: InitialCondition = EXCITED,
    method: str = "auto",
    rtol: float = 1e-10,
    atol: float = 1e-10,
    backend: str | None = None,
) -> Trajectory:
    """Evolve params.sector_n over a grid starting at t = 0.

    method 'auto' uses the analytic path and falls back to the ODE when
    the cubic roots are (nearly) degenerate; 'analytic' and 'oracle'
    force one route.
    """
    if method not in ("auto", "analytic", "oracle"):
        raise ValueError(f"method must be 'auto', 'analytic' or 'oracle', got {method!r}")
    grid = _as_grid(times, require_zero_start=True)
    coeffs = sector_coefficients(params)
    if method in ("auto", "analytic"):
        try:
            roots = solve_cubic(theta_poly(coeffs, params.omega_e))
        except DegenerateRootsError:
            if method == "analytic":
                raise
        else:
            return analytic_trajectory(coeffs, params.omega_e, ic, grid, roots=roots, params=params)
    return amplitudes_ode(
        coeffs, params.omega_e, ic, grid, rtol=rtol, atol=atol, backend=backend, params=params
    )
