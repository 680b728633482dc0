"""Characteristic cubic of the sector dynamics and its complex roots.

The Laplace-domain 3x3 system of one photon sector has determinant
Theta(z), a monic cubic whose roots are the oscillation poles of the
amplitudes.  For physical coefficients the roots sit on the imaginary
axis (the generator is Hermitian), which the diagnostics expose.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .model import SectorCoefficients

__all__ = [
    "CubicPoly",
    "CubicRoots",
    "DegenerateRootsError",
    "theta_poly",
    "solve_cubic",
]

TOL_RESIDUAL = 1e-12
TOL_DEGENERATE = 1e-8


class DegenerateRootsError(ValueError):
    """Raised when two roots (nearly) coincide and the residue expansion
    of the time-domain amplitudes would be ill-conditioned."""


@dataclass(frozen=True)
class CubicPoly:
    """Monic cubic z^3 + a2*z^2 + a1*z + a0 with complex coefficients."""

    a2: complex
    a1: complex
    a0: complex

    def __call__(self, z: complex) -> complex:
        return ((z + self.a2) * z + self.a1) * z + self.a0

    def deriv(self, z: complex) -> complex:
        return (3.0 * z + 2.0 * self.a2) * z + self.a1


@dataclass(frozen=True)
class CubicRoots:
    """Roots ordered by ascending imaginary part (ties by real part).

    min_pairwise_gap is the smallest |alpha_i - alpha_j|; max_residual is
    the largest |Theta(alpha_j)| / max(1, |alpha_j|^3) over the roots.
    """

    roots: tuple[complex, complex, complex]
    min_pairwise_gap: float
    max_residual: float


def theta_poly(coeffs: SectorCoefficients, omega_e: float) -> CubicPoly:
    """Characteristic cubic of the sector's Laplace matrix.

    a2 = -i(h + s) and a0 are purely imaginary, a1 is purely real; under
    z -> i*lambda the cubic becomes real, so all roots are purely
    imaginary for physical inputs.
    """
    h, s = coeffs.h, coeffs.s
    v1, v2 = coeffs.v1, coeffs.v2
    a2 = -1j * (h + s)
    a1 = complex(omega_e * omega_e + v1 * v1 + v2 * v2 - s * h)
    a0 = -1j * (2.0 * omega_e * v1 * v2 + v1 * v1 * s + v2 * v2 * h)
    return CubicPoly(a2=a2, a1=a1, a0=a0)


def _cardano(poly: CubicPoly) -> list[complex]:
    a2, a1, a0 = poly.a2, poly.a1, poly.a0
    shift = a2 / 3.0
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    root_disc = cmath.sqrt(disc)
    # pick the branch with the larger magnitude to avoid cancellation
    u3 = -q / 2.0 + root_disc
    alt = -q / 2.0 - root_disc
    if abs(alt) > abs(u3):
        u3 = alt
    if u3 == 0:
        # p == q == 0: triple root
        return [-shift, -shift, -shift]
    u = u3 ** (1.0 / 3.0)
    omega = complex(-0.5, 0.5 * math.sqrt(3.0))
    roots = []
    for _ in range(3):
        roots.append(u - p / (3.0 * u) - shift)
        u *= omega
    return roots


def _polish(poly: CubicPoly, z: complex, max_iter: int = 3) -> complex:
    best = z
    best_res = abs(poly(z))
    for _ in range(max_iter):
        dz = poly.deriv(z)
        if dz == 0:
            break
        z = z - poly(z) / dz
        res = abs(poly(z))
        if res >= best_res:
            break
        best, best_res = z, res
    return best


def solve_cubic(poly: CubicPoly, tol_degenerate: float = TOL_DEGENERATE) -> CubicRoots:
    """Roots of a monic cubic via Cardano's formula plus Newton polishing.

    Raises DegenerateRootsError when the smallest pairwise root gap falls
    below tol_degenerate * max(1, |alpha|): the residue formulas downstream
    assume distinct poles, and the ODE path covers the degenerate set.
    """
    raw = _cardano(poly)
    roots = sorted((_polish(poly, z) for z in raw), key=lambda z: (z.imag, z.real))
    a, b, c = roots
    gap = min(abs(a - b), abs(a - c), abs(b - c))
    scale = max(1.0, max(abs(z) for z in roots))
    if gap < tol_degenerate * scale:
        raise DegenerateRootsError(
            f"near-degenerate cubic roots (gap {gap:.3e}, scale {scale:.3e}); "
            "use the ODE path for this parameter set"
        )
    residual = max(abs(poly(z)) / max(1.0, abs(z) ** 3) for z in roots)
    return CubicRoots(roots=(a, b, c), min_pairwise_gap=gap, max_residual=residual)
