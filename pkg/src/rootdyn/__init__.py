"""Dynamics of rational operators from fourth-order root finding on quadratics."""

from .sphere import CHART_LIMIT, INF, ONE, ZERO, SpherePoint, chordal, ratio, sphere, sphere_eq
from .operators import (
    BEHL_DEGENERATE,
    BehlParams,
    GeneralParams,
    QuadraticTarget,
    behl_step,
    eval_R,
    eval_S,
    eval_ank,
    eval_ank_deriv,
    eval_b,
    eval_b_deriv,
    moebius_h,
    moebius_h_inv,
    reparam_a_of_b,
    reparam_b_of_a,
)
from .fixedpoints import (
    CriticalSet,
    FixedPointReport,
    PolynomialRootConfig,
    SolverError,
    aberth_roots,
    classify_multiplier,
    critical_points_b,
    critical_set_ank,
    fixed_points_ank,
    multiplier_and_class,
    strange_fixed_zpm_ank41,
    strange_fixed_zpm_b,
)
from .stability import (
    AntennaIntervals,
    StabilityRegionQuery,
    antenna_b_image,
    antenna_intervals,
    behl_curve_values,
    boundary_to_csv,
    boundary_to_json,
    nu_zpm_a,
    region_z1_ank,
    region_zm1_ank,
    region_zpm_a,
    trace_boundary,
    zpm_curve_poly_b,
)
from .orbits import (
    CycleReport,
    EscapeConfig,
    OrbitClassification,
    classify_critical_orbit,
    classify_seed,
    detect_cycle,
    empirical_order,
    escape_orbits,
    unit_circle_drift,
)

__version__ = "0.1.0"
