"""Class-A dynamics on solvable Lie algebras: simulation, checks and certificates."""

import json

from ._liestab import (  # noqa: F401
    HypothesisError,
    InputError,
    InvarianceViolation,
    LieAlgebra,
    PrincipalLogUndefined,
    Scenario,
    adjoint_flow_step,
    algebra,
    algebra_from_json,
    bch_compose,
    builtin_names,
    expm,
    fit_envelope,
    logm,
)
from . import _liestab


def check(scenario, seed=1):
    """Class-A majorant, equilibrium search, invariance and Jacobian reports."""
    return json.loads(_liestab._check(scenario, seed))


def certify_nilpotent(scenario, M=0.0, epsilon=0.0):
    return json.loads(_liestab._certify_nilpotent(scenario, M, epsilon))


def certify_solvable(scenario, horizon=0):
    return json.loads(_liestab._certify_solvable(scenario, horizon))


def deadbeat(scenario, runs=100, seed=1):
    return json.loads(_liestab._deadbeat(scenario, runs, seed))


__all__ = [
    "HypothesisError",
    "InputError",
    "InvarianceViolation",
    "LieAlgebra",
    "PrincipalLogUndefined",
    "Scenario",
    "adjoint_flow_step",
    "algebra",
    "algebra_from_json",
    "bch_compose",
    "builtin_names",
    "certify_nilpotent",
    "certify_solvable",
    "check",
    "deadbeat",
    "expm",
    "fit_envelope",
    "logm",
]
