"""Kepler dynamics and conic geometry on constant-curvature surfaces.

One parameter, the Gaussian curvature kappa, selects the surface: the
sphere for kappa > 0, the Euclidean plane for kappa = 0 and the
hyperbolic plane for kappa < 0.  The package provides the tagged
trigonometry kernel, geodesic polar geometry, the curved Kepler
dynamics with its full set of first integrals, effective-potential
analysis, closed-form orbits and the taxonomy of non-Euclidean conics,
plus a command line interface (``curvedkepler``).
"""

from .errors import (
    CurvedKeplerError,
    DegenerateError,
    DomainError,
    InfeasibleError,
    PoleError,
    RadialOrbitError,
    SingularityError,
    StiffnessError,
)
from .dynamics import (
    ConservedSet,
    KeplerParams,
    Momenta,
    PhaseState,
    Trajectory,
    circular_state,
    energy,
    eom_rhs,
    gauss_law_flux,
    integrate,
    integrate_separable,
    kepler_potential,
    kepler_potential_gradient,
    killing_fields,
    kinetic_energy,
    momenta,
    runge_lenz,
    separable_integrals,
)
from .conics import (
    ConicFamily,
    ConicLabel,
    ConicSpec,
    ConicType,
    FocalElements,
    FocalKind,
    PeriastronFamily,
    classify_conic,
    conic_from_dynamics,
    ecc_from_focal,
    equiparabola_ecc,
    focal_from_vertices,
    periastron_family,
    sample_conic,
    verify_conic_definition,
)
from .effective_potential import (
    BOUNDED_LABELS,
    OrbitClass,
    OrbitLabel,
    PotentialProfile,
    classify_orbit,
    critical_point,
    escape_angular_momentum,
    escape_energy,
    potential_profile,
    turning_points,
    w_eff,
)
from .geometry import (
    AmbientPoint,
    PolarPoint,
    from_ambient,
    geodesic_distance,
    metric_coefficient,
    reduce_angle,
    to_ambient,
    to_poincare_disk,
)
from .orbit import (
    OrbitConstants,
    binet_residual,
    orbit_constants,
    orbit_radius,
    phi_from_time,
    radial_period,
    time_from_u,
    u_closed,
)
from .ktrig import (
    Curvature,
    acot_k,
    atan_k,
    cos_k,
    curvature_value,
    radial_limit,
    sin_k,
    tan_k,
)

__version__ = "0.1.0"

__all__ = [
    "CurvedKeplerError",
    "DomainError",
    "PoleError",
    "SingularityError",
    "DegenerateError",
    "RadialOrbitError",
    "InfeasibleError",
    "StiffnessError",
    "Curvature",
    "curvature_value",
    "radial_limit",
    "cos_k",
    "sin_k",
    "tan_k",
    "atan_k",
    "acot_k",
    "PolarPoint",
    "AmbientPoint",
    "reduce_angle",
    "metric_coefficient",
    "geodesic_distance",
    "to_ambient",
    "from_ambient",
    "to_poincare_disk",
    "PhaseState",
    "KeplerParams",
    "Momenta",
    "ConservedSet",
    "Trajectory",
    "kepler_potential",
    "kepler_potential_gradient",
    "gauss_law_flux",
    "eom_rhs",
    "momenta",
    "kinetic_energy",
    "energy",
    "runge_lenz",
    "killing_fields",
    "separable_integrals",
    "circular_state",
    "integrate",
    "integrate_separable",
    "OrbitLabel",
    "OrbitClass",
    "PotentialProfile",
    "BOUNDED_LABELS",
    "w_eff",
    "critical_point",
    "escape_energy",
    "escape_angular_momentum",
    "turning_points",
    "classify_orbit",
    "potential_profile",
    "OrbitConstants",
    "orbit_constants",
    "u_closed",
    "orbit_radius",
    "binet_residual",
    "time_from_u",
    "radial_period",
    "phi_from_time",
    "ConicFamily",
    "ConicLabel",
    "ConicSpec",
    "ConicType",
    "FocalKind",
    "FocalElements",
    "PeriastronFamily",
    "conic_from_dynamics",
    "classify_conic",
    "equiparabola_ecc",
    "ecc_from_focal",
    "focal_from_vertices",
    "verify_conic_definition",
    "periastron_family",
    "sample_conic",
    "__version__",
]
