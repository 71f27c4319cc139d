"""Boundary combinatorics of compactified universal Picard varieties.

The package models nodal curves by their dual graphs and answers, in exact
integer/rational arithmetic, the combinatorial questions that control the
boundary of a compactified universal Picard variety and the closure of the
theta-characteristic (spin) locus inside it: admissible multidegrees, blow-up
models with their spin parity, canonical spin multidegrees, GIT stability and
orbit closure, witness search for spin-reachable fiber components, and a few
scalar invariants.
"""

from __future__ import annotations

from .errors import (
    BasicInequalityError,
    BlowupError,
    DomainError,
    GraphError,
    GraphTooLargeError,
    ParityError,
    SpinPicardError,
    WitnessError,
)
from .graphs import (
    MAX_SUBSET_VERTICES,
    BIReport,
    BIViolation,
    DualGraph,
    Multidegree,
    SubcurveProfile,
    Vertex,
    arithmetic_genus,
    basic_inequality,
    enumerate_multidegrees,
    is_stable,
    iter_subcurves,
    subcurve_profile,
    validate_graph,
)
from .numerics import (
    PicardParams,
    class_group_rank,
    coarse_moduli_predicate,
    kouvidakis_class,
    normalize_degree,
)
from .quasistable import (
    BlowupConfig,
    BoundaryCase,
    ExceptionalProfile,
    QuasistableGraph,
    boundary_case,
    contract,
    exceptional_profile,
    expand,
    git_stable,
    git_stable_exhaustive,
    iter_blowup_configs,
    orbit_closed_check,
    spin_multidegree,
    spin_parity,
)
from .spin_locus import (
    SpinWitness,
    SplitCurveRow,
    decide_spin_component,
    enumerate_spin_multidegrees,
    grouped_multidegree,
    orientation_feasible,
    split_curve_graph,
    split_curve_table,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "SpinPicardError",
    "GraphError",
    "BlowupError",
    "WitnessError",
    "ParityError",
    "DomainError",
    "BasicInequalityError",
    "GraphTooLargeError",
    # graphs
    "MAX_SUBSET_VERTICES",
    "Vertex",
    "DualGraph",
    "Multidegree",
    "SubcurveProfile",
    "BIViolation",
    "BIReport",
    "validate_graph",
    "arithmetic_genus",
    "is_stable",
    "subcurve_profile",
    "basic_inequality",
    "enumerate_multidegrees",
    "iter_subcurves",
    # quasistable
    "BlowupConfig",
    "QuasistableGraph",
    "ExceptionalProfile",
    "BoundaryCase",
    "expand",
    "contract",
    "spin_parity",
    "spin_multidegree",
    "exceptional_profile",
    "boundary_case",
    "git_stable",
    "git_stable_exhaustive",
    "orbit_closed_check",
    "iter_blowup_configs",
    # spin locus
    "SpinWitness",
    "SplitCurveRow",
    "grouped_multidegree",
    "decide_spin_component",
    "enumerate_spin_multidegrees",
    "split_curve_graph",
    "split_curve_table",
    "orientation_feasible",
    # numerics
    "PicardParams",
    "kouvidakis_class",
    "coarse_moduli_predicate",
    "class_group_rank",
    "normalize_degree",
]
