"""Quantum measures computed from sector trajectories.

Populations and inversion come straight from the amplitudes; field
moments, photon statistics and squeezing use the deformed ladder
operators restricted to the sector's three basis kets; entanglement is
quantified by the von Neumann entropy of the reduced atomic state.

The ladder-moment engine (`annihilation_moment`, `number_moment`) builds
matrix elements generically from the basis kets instead of hand-reduced
formulas, so structural facts (for instance that every <A^k> with k >= 1
vanishes in a single-sector state) are computed, not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import EXCITED, AmplitudeState, InitialCondition, Trajectory, solve_sector
from .model import ModelParams, f_value

__all__ = [
    "UndefinedObservableError",
    "ObservableSeries",
    "ReducedAtomState",
    "HusimiGrid",
    "OBSERVABLE_NAMES",
    "populations",
    "inversion",
    "field_moments",
    "g2_zero",
    "reduced_density",
    "von_neumann_entropy",
    "mandel_q",
    "squeezing_params",
    "annihilation_moment",
    "number_moment",
    "trajectory_series",
    "husimi_q",
]

LN2 = math.log(2.0)

OBSERVABLE_NAMES = ("populations", "inversion", "g2", "entropy", "mandel_q", "squeezing", "husimi")


class UndefinedObservableError(ZeroDivisionError):
    """An intensity-normalized observable was requested where <A+A> = 0."""


@dataclass(frozen=True)
class ObservableSeries:
    """One named real-valued series over the scaled time tau."""

    name: str
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")
        if not np.all(np.isfinite(self.values)):
            raise ValueError(f"series {self.name!r} contains non-finite values")


@dataclass(frozen=True)
class ReducedAtomState:
    """Reduced 3x3 atomic density matrix (rows/cols |1>, |2>, |3>)."""

    matrix: np.ndarray


@dataclass(frozen=True)
class HusimiGrid:
    """Husimi values over a rectangular patch of the coherent-state plane.

    values[i, j] = Q(x_axis[j] + 1j * y_axis[i]) at evaluation time t.
    """

    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray
    t: float
    n_max: int


# ---------------------------------------------------------------------------
# ladder-moment engine
# ---------------------------------------------------------------------------

def _sector_basis(n: int) -> tuple[tuple[int, int], ...]:
    # (atomic level index, photon count) for |1,n+1>, |2,n>, |3,n>
    return ((0, n + 1), (1, n), (2, n))


def _lowering_weight(deformation, m: int, k: int) -> float:
    """Matrix element <m-k| A^k |m> along one atomic level (0 if m < k)."""
    w = 1.0
    mm = m
    for _ in range(k):
        if mm == 0:
            return 0.0
        w *= f_value(deformation, mm) * math.sqrt(mm)
        mm -= 1
    return w


def annihilation_moment(amps: np.ndarray, params: ModelParams, k: int):
    """<A^k> for a sector state; amps has shape (..., 3)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    basis = _sector_basis(params.sector_n)
    total = np.zeros(np.shape(amps)[:-1], dtype=np.complex128)
    for j, (level, photons) in enumerate(basis):
        w = _lowering_weight(params.deformation, photons, k)
        if w == 0.0:
            continue
        target = (level, photons - k)
        for i, ket in enumerate(basis):
            if ket == target:
                total = total + np.conj(np.asarray(amps)[..., i]) * np.asarray(amps)[..., j] * w
    return total


def number_moment(amps: np.ndarray, params: ModelParams, k: int):
    """<(A+A)^k> for a sector state; amps has shape (..., 3)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    total = np.zeros(np.shape(amps)[:-1], dtype=np.float64)
    for i, (_, photons) in enumerate(_sector_basis(params.sector_n)):
        eigen = photons * f_value(params.deformation, photons) ** 2
        total = total + np.abs(np.asarray(amps)[..., i]) ** 2 * eigen**k
    return total


# ---------------------------------------------------------------------------
# per-state observables
# ---------------------------------------------------------------------------

def populations(state: AmplitudeState) -> tuple[float, float, float]:
    """Occupation probabilities (P1, P2, P3) of the three sector kets."""
    return (abs(state.c1) ** 2, abs(state.c2) ** 2, abs(state.c3) ** 2)


def inversion(state: AmplitudeState) -> float:
    """Population inversion between the ground and the top level, P1 - P3."""
    return abs(state.c1) ** 2 - abs(state.c3) ** 2


def _moment_weights(params: ModelParams) -> tuple[float, float, float]:
    n = params.sector_n
    d = params.deformation
    w_up = (n + 1) * f_value(d, n + 1) ** 2
    w_dn = n * f_value(d, n) ** 2
    # the two-photon weight (n-1) f^2(n-1) is 0 by definition at n = 0
    w_two = (n - 1) * f_value(d, n - 1) ** 2 if n >= 1 else 0.0
    return w_up, w_dn, w_two


def field_moments(state: AmplitudeState, params: ModelParams) -> tuple[float, float]:
    """First and second moments of the deformed photon number, (<A+A>, <(A+A)^2>)."""
    p1 = abs(state.c1) ** 2
    p23 = abs(state.c2) ** 2 + abs(state.c3) ** 2
    w_up, w_dn, _ = _moment_weights(params)
    return (w_up * p1 + w_dn * p23, w_up**2 * p1 + w_dn**2 * p23)


def g2_zero(state: AmplitudeState, params: ModelParams) -> float:
    """Zero-delay second-order intensity correlation g2(0)."""
    p1 = abs(state.c1) ** 2
    p23 = abs(state.c2) ** 2 + abs(state.c3) ** 2
    w_up, w_dn, w_two = _moment_weights(params)
    m1 = w_up * p1 + w_dn * p23
    if m1 == 0.0:
        raise UndefinedObservableError("g2(0) is undefined: <A+A> = 0")
    return (w_up * w_dn * p1 + w_two * w_dn * p23) / (m1 * m1)


def reduced_density(state: AmplitudeState) -> ReducedAtomState:
    """Reduced atomic density matrix after tracing out the field.

    Block structure: level |1> decouples (its field ket differs by one
    photon), leaving a rank-one 2x2 block for |2>, |3>.
    """
    c1, c2, c3 = state.c1, state.c2, state.c3
    rho = np.array(
        [
            [c1 * c1.conjugate(), 0.0, 0.0],
            [0.0, c2 * c2.conjugate(), c3 * c2.conjugate()],
            [0.0, c2 * c3.conjugate(), c3 * c3.conjugate()],
        ],
        dtype=np.complex128,
    )
    return ReducedAtomState(matrix=rho)


def von_neumann_entropy(rho: ReducedAtomState) -> float:
    """Entanglement entropy -sum(lambda ln lambda) of the reduced state, in nats."""
    lam = np.linalg.eigvalsh(rho.matrix)
    lam = np.where((lam < 0.0) & (lam >= -1e-12), 0.0, lam)
    if np.any(lam < 0.0):
        raise ValueError(f"density matrix has a negative eigenvalue: {lam}")
    positive = lam[lam > 0.0]
    return float(-np.sum(positive * np.log(positive)))


def mandel_q(state: AmplitudeState, params: ModelParams) -> float:
    """Mandel Q of the deformed photon number; -1 for number states."""
    m1, m2 = field_moments(state, params)
    if m1 == 0.0:
        raise UndefinedObservableError("Mandel Q is undefined: <A+A> = 0")
    return (m2 - m1 * m1) / m1 - 1.0


def _squeezing_arrays(amps: np.ndarray, params: ModelParams):
    m1 = number_moment(amps, params, 1)
    m2 = number_moment(amps, params, 2)
    a1 = annihilation_moment(amps, params, 1)
    a2 = annihilation_moment(amps, params, 2)
    a4 = annihilation_moment(amps, params, 4)
    # single-sector states pair distinct levels with distinct photon
    # numbers, so every <A^k> with k >= 1 must come out identically zero
    for label, moment in (("<A>", a1), ("<A^2>", a2), ("<A^4>", a4)):
        worst = float(np.max(np.abs(moment))) if np.size(moment) else 0.0
        if worst > 1e-14:
            raise RuntimeError(f"anomalous moment {label} = {worst:.3e} did not vanish")
    ad1 = np.conj(a1)
    ad2 = np.conj(a2)
    ad4 = np.conj(a4)
    s1x = 2.0 * m1 + (a2 + ad2 - a1**2 - ad1**2 - 2.0 * a1 * ad1).real
    s1p = 2.0 * m1 + (-a2 - ad2 + a1**2 + ad1**2 - 2.0 * a1 * ad1).real
    s2x = 2.0 * m2 - 2.0 * m1 + (a4 + ad4 - a2**2 - ad2**2 - 2.0 * a2 * ad2).real
    s2p = 2.0 * m2 - 2.0 * m1 + (-a4 - ad4 + a2**2 + ad2**2 - 2.0 * a2 * ad2).real
    return s1x, s1p, s2x, s2p


def squeezing_params(state: AmplitudeState, params: ModelParams) -> tuple[float, float, float, float]:
    """First- and second-order quadrature squeezing parameters
    (s1_x, s1_p, s2_x, s2_p), assembled from the generic moment engine."""
    amps = np.array([state.c1, state.c2, state.c3], dtype=np.complex128)
    s1x, s1p, s2x, s2p = _squeezing_arrays(amps, params)
    return (float(s1x), float(s1p), float(s2x), float(s2p))


# ---------------------------------------------------------------------------
# trajectory-level series
# ---------------------------------------------------------------------------

def _entropy_values(p1: np.ndarray) -> np.ndarray:
    p = np.clip(p1, 0.0, 1.0)
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        mask = q > 0.0
        out[mask] -= q[mask] * np.log(q[mask])
    return out


def trajectory_series(traj: Trajectory, name: str, params: ModelParams | None = None) -> list[ObservableSeries]:
    """Named observable series over a trajectory; times are tau = omega_cavity * t."""
    params = params if params is not None else traj.params
    if params is None:
        raise ValueError("trajectory carries no ModelParams; pass params explicitly")
    tau = params.omega_cavity * traj.times
    amps = traj.amplitudes
    probs = np.abs(amps) ** 2

    if name == "populations":
        return [ObservableSeries(f"P{i + 1}", tau, probs[:, i]) for i in range(3)]
    if name == "inversion":
        return [ObservableSeries("W", tau, probs[:, 0] - probs[:, 2])]
    if name == "entropy":
        return [ObservableSeries("S", tau, _entropy_values(probs[:, 0]))]
    if name in ("g2", "mandel_q"):
        w_up, w_dn, w_two = _moment_weights(params)
        p1 = probs[:, 0]
        p23 = probs[:, 1] + probs[:, 2]
        m1 = w_up * p1 + w_dn * p23
        if np.any(m1 == 0.0):
            raise UndefinedObservableError(f"{name} is undefined where <A+A> = 0")
        if name == "g2":
            return [ObservableSeries("g2", tau, (w_up * w_dn * p1 + w_two * w_dn * p23) / m1**2)]
        m2 = w_up**2 * p1 + w_dn**2 * p23
        return [ObservableSeries("Q", tau, (m2 - m1**2) / m1 - 1.0)]
    if name == "squeezing":
        s1x, s1p, s2x, s2p = _squeezing_arrays(amps, params)
        return [
            ObservableSeries("s1_x", tau, s1x),
            ObservableSeries("s1_p", tau, s1p),
            ObservableSeries("s2_x", tau, s2x),
            ObservableSeries("s2_p", tau, s2p),
        ]
    raise ValueError(f"unknown observable {name!r}")


# ---------------------------------------------------------------------------
# Husimi function
# ---------------------------------------------------------------------------

def _amplitudes_at(params: ModelParams, t: float, ic: InitialCondition, method: str) -> np.ndarray:
    if t == 0.0:
        return ic.as_array()
    traj = solve_sector(params, np.array([0.0, t]), ic=ic, method=method)
    return traj.amplitudes[-1]


def husimi_q(
    params: ModelParams,
    t: float,
    x_range: tuple[float, float] = (-3.0, 3.0),
    y_range: tuple[float, float] = (-3.0, 3.0),
    resolution: int = 121,
    mode: str = "single",
    n_max: int | None = None,
    ic: InitialCondition = EXCITED,
    method: str = "auto",
) -> HusimiGrid:
    """Husimi function over a grid of coherent-state amplitudes.

    mode 'single' evaluates the term of the populated sector
    params.sector_n only: that is the Husimi function of the reduced
    field state and integrates to one.  mode 'all' accumulates the terms
    of every sector n <= n_max, each evolved from the default entry
    condition; the result is a diagnostic surface, not a normalized
    distribution.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if not (math.isfinite(x_range[0]) and math.isfinite(x_range[1])):
        raise ValueError("x_range must be finite")
    if not (math.isfinite(y_range[0]) and math.isfinite(y_range[1])):
        raise ValueError("y_range must be finite")
    if t < 0.0:
        raise ValueError("t must be >= 0")
    x = np.linspace(x_range[0], x_range[1], resolution)
    y = np.linspace(y_range[0], y_range[1], resolution)
    r2 = x[None, :] ** 2 + y[:, None] ** 2

    if mode == "single":
        n = params.sector_n
        p = np.abs(_amplitudes_at(params, float(t), ic, method)) ** 2
        pois = np.exp(-r2)
        for m in range(1, n + 1):
            pois = pois * (r2 / m)
        values = pois * ((r2 / (n + 1)) * p[0] + p[1] + p[2]) / math.pi
        used_n_max = n
    elif mode == "all":
        peak = float(np.max(r2))
        if n_max is None:
            n_max = max(30, math.ceil(peak + 10.0 * math.sqrt(peak)))
        pois = np.exp(-r2)
        acc = np.zeros_like(r2)
        for m in range(n_max + 1):
            if m > 0:
                pois = pois * (r2 / m)
            p = np.abs(_amplitudes_at(replace(params, sector_n=m), float(t), ic, method)) ** 2
            acc += pois * ((r2 / (m + 1)) * p[0] + p[1] + p[2])
        values = acc / math.pi
        used_n_max = n_max
    else:
        raise ValueError(f"mode must be 'single' or 'all', got {mode!r}")
    return HusimiGrid(x_axis=x, y_axis=y, values=values, t=float(t), n_max=used_n_max)
