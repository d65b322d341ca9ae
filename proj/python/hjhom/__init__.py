"""Numerical laboratory for a viscous Hamilton-Jacobi equation in a two-scale
random environment: environment sampling, explicit super/subsolutions, a
monotone finite-difference solver, and rectangle-event probability bounds."""

from ._core import (  # noqa: F401
    Box,
    BoundaryMode,
    Environment,
    EnvParams,
    EventQuery,
    GridField,
    McEstimate,
    PdeSolver,
    PlantSpec,
    Rectangle,
    SolverConfig,
    SolverRun,
    SuperSolutionSpec,
    bump,
    bump_prime,
    bump_double_prime,
    case_bound,
    check_assumptions,
    classify_case,
    erf,
    grad_u_plus,
    hamiltonian,
    kinetic,
    lattice_points_in_disk,
    liminf_lower,
    mc_estimate,
    normalize_value,
    p_ck_exact_disk,
    p_ck_lower,
    p_dk_given_ck_lower,
    plant_complete_rectangle,
    probe_series_csv,
    rectangles_csv,
    residual_minus,
    residual_plus,
    rotate_environment,
    u_minus,
    u_plus,
)

__all__ = [name for name in dir() if not name.startswith("_")]
