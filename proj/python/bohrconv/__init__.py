"""Bohr radii of convolution operators on the unit disk."""

import json

from ._core import (
    HypothesisViolation,
    NoRootError,
    bombieri_id0,
    cesaro_bombieri_bound,
    dilog,
    integral_threshold,
    lambert_w,
    radius_derivative_pair,
    radius_derivative_pair_with_a,
    radius_hypergeometric,
    radius_id0,
    radius_integral_lower,
    radius_integral_upper,
    radius_integral_with_a,
    radius_lacunary_with_a,
    run_cli,
    shift_pair_lower_bound,
)
from ._core import run_suite as _run_suite


def run_suite(suite, samples=1000, seed=0, order=256):
    """Verification reports as a list of dicts."""
    return json.loads(_run_suite(suite, samples, seed, order))


__all__ = [
    "HypothesisViolation",
    "NoRootError",
    "bombieri_id0",
    "cesaro_bombieri_bound",
    "dilog",
    "integral_threshold",
    "lambert_w",
    "radius_derivative_pair",
    "radius_derivative_pair_with_a",
    "radius_hypergeometric",
    "radius_id0",
    "radius_integral_lower",
    "radius_integral_upper",
    "radius_integral_with_a",
    "radius_lacunary_with_a",
    "run_cli",
    "run_suite",
    "shift_pair_lower_bound",
]
