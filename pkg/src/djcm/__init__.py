"""djcm: per-photon-sector dynamics of a microwave-driven V-type atom in a
Kerr-deformed cavity, with the full set of derived quantum observables."""

from .backend import ACTIVE as active_backend
from .dynamics import (
    EXCITED,
    AmplitudeState,
    InitialCondition,
    StepSizeUnderflowError,
    Trajectory,
    amplitudes_analytic,
    amplitudes_ode,
    analytic_trajectory,
    solve_sector,
)
from .model import (
    Deformation,
    Identity,
    Kerr,
    ModelParams,
    SectorCoefficients,
    f_value,
    k_value,
    sector_coefficients,
)
from .observables import (
    HusimiGrid,
    ObservableSeries,
    ReducedAtomState,
    UndefinedObservableError,
    field_moments,
    g2_zero,
    husimi_q,
    inversion,
    mandel_q,
    populations,
    reduced_density,
    squeezing_params,
    trajectory_series,
    von_neumann_entropy,
)
from .spectrum import CubicPoly, CubicRoots, DegenerateRootsError, solve_cubic, theta_poly

__version__ = "0.1.0"
