"""Forward scattering engine for piecewise-constant layered acoustic media.

Computes the time-limited boundary impulse response of an n-layer medium
as an exact finite delta train, built from a family of disk eigenfunction
polynomials, and cross-checks it against a Fourier-domain backward
recurrence and an independent discrete-grid series oracle.
"""

from .diskgeom import GeodesicParams, area_density, geodesic_theta, radial_distance
from .errors import (
    DomainError,
    FloatDepthWarning,
    ImpedanceNotInRightHalfPlane,
    LatticeLimitExceeded,
    LayerlabError,
    MixedAngularIndex,
    NonIncreasingDepths,
    NotAnEigenvalue,
    NotNormalized,
    PoleError,
    TruncationTooSmall,
)
from .forward import (
    DeltaTrain,
    SpectrumTrace,
    amplitude_c_k,
    amplitude_power_sum,
    backward_recurrence,
    enumerate_lattice,
    generalized_K,
    greens_function,
    is_lattice_point,
    pushforward_check,
    spectrum,
    wavefield_psi,
)
from .media import (
    ImpedanceProfile,
    MediumParams,
    layer_collapse,
    mobius,
    phi_inverse,
    phi_map,
    profile_to_params,
    validate_profile,
)
from .oracle import (
    TruncatedSeries,
    common_grid,
    compare_trains,
    expand_medium,
    oracle_train,
    random_medium,
    series_recurrence,
)
from .spoly import (
    BivariatePolynomial,
    RadialCoefficients,
    angular_index,
    eval_poly,
    eval_poly_exact,
    hybrid_laplacian_apply,
    jacobi_eval,
    radial_f,
    radial_from_recurrence,
    scattering_poly,
    scattering_value,
    xi_product,
)

__version__ = "0.1.0"
