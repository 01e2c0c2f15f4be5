"""Pseudo-spectral laboratory for the generalized surface quasi-geostrophic family."""

from ._gsqg import (
    GsqgError,
    dealias,
    exponential_map,
    fractional_laplacian,
    hamiltonian,
    holder_seminorm,
    integrate_transport,
    jacobian_det,
    random_smooth_field,
    read_field,
    riesz_transform,
    run_holder_boost,
    run_inequality_sweep,
    run_nonuniform,
    sobolev_norm,
    taylor_green,
    theta_from_velocity,
    transport_rhs,
    velocity_from_theta,
    volume_correct,
    write_field,
)

__all__ = [
    "GsqgError",
    "dealias",
    "exponential_map",
    "fractional_laplacian",
    "hamiltonian",
    "holder_seminorm",
    "integrate_transport",
    "jacobian_det",
    "random_smooth_field",
    "read_field",
    "riesz_transform",
    "run_holder_boost",
    "run_inequality_sweep",
    "run_nonuniform",
    "sobolev_norm",
    "taylor_green",
    "theta_from_velocity",
    "transport_rhs",
    "velocity_from_theta",
    "volume_correct",
    "write_field",
]
