"""Charged oscillator in noncommutative phase space."""

from ._core import (
    EigenSolverError,
    Params,
    ParseError,
    State,
    commutator,
    de_eta,
    de_theta,
    e0,
    eigenvalues,
    expand,
    f_coeff,
    first_order_oracle,
    hf_slope,
    normalize,
    run_cli,
    validity,
)

__all__ = [
    "EigenSolverError",
    "Params",
    "ParseError",
    "State",
    "commutator",
    "de_eta",
    "de_theta",
    "e0",
    "eigenvalues",
    "expand",
    "f_coeff",
    "first_order_oracle",
    "hf_slope",
    "normalize",
    "run_cli",
    "validity",
]
