"""Time-triggered desensitized trajectory optimization."""

from ._core import (
    DesocError,
    cart_to_mee,
    dump_config,
    kepler_propagate,
    mee_to_cart,
    orbit_raising_dispersion,
    orbit_raising_rates,
    shooting_oracle,
    solve_orbit_raising,
    solve_problem_file,
    trigger,
)

__all__ = [
    "DesocError",
    "cart_to_mee",
    "dump_config",
    "kepler_propagate",
    "mee_to_cart",
    "orbit_raising_dispersion",
    "orbit_raising_rates",
    "shooting_oracle",
    "solve_orbit_raising",
    "solve_problem_file",
    "trigger",
]
