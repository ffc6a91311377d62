"""Shape-preserving polynomial approximation on [0, 1].

Functions are catalog specs such as ``"exp"``, ``"xeps:0.5"``,
``"trunc:0.5:3"``, a path to a polynomial ``.json`` file, or a Python
callable.
"""

from ._core import (
    DegreeError,
    DomainError,
    RegimeError,
    SolverError,
    apply,
    best_qmonotone,
    best_uniform,
    bound_envelope,
    check_k_monotone,
    equioscillation_count,
    evaluate,
    generator,
    git_blob_sha1,
    omega,
    run_experiment,
)

__all__ = [
    "DegreeError",
    "DomainError",
    "RegimeError",
    "SolverError",
    "apply",
    "best_qmonotone",
    "best_uniform",
    "bound_envelope",
    "check_k_monotone",
    "equioscillation_count",
    "evaluate",
    "generator",
    "git_blob_sha1",
    "omega",
    "run_experiment",
]
