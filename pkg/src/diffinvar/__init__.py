"""Differential elimination tools for algebraic invariants of polynomial ODE systems."""
from .bounds import Magnitude, degree_audit, fib, r_bound, rtower, t_bound, tower
from .errors import (
    AssumptionUnverified,
    ConstantPolynomial,
    DiffAlgError,
    MissingAssignment,
    NotApplicable,
    NothingToReduce,
    NotNondifferential,
    OrderTooHigh,
    PreconditionViolated,
    ResourceExceeded,
    SpecSyntaxError,
    UndeclaredVariable,
    ZeroPolynomial,
)
from .groebner import (
    Budget,
    groebner_basis,
    ideal_equal,
    intersect,
    member,
    normal_form,
    radical_member,
    saturation,
)
from .invariants import (
    Verdict,
    check_invariant,
    check_sufficient,
    classify_branch,
    lie_closure,
    sign_change_witness,
)
from .lie import VectorField, lie, substitute_derivatives
from .parsing import SystemSpec, parse_expression, parse_spec
from .poly import DerivVar, DiffPoly, differentiate, evaluate, partial
from .pseudodiv import diff_pseudo_div, pdiv_step, verify_trace
from .ranking import Ranking, initial, lis, separant, tail
from .rga import Decomposition, RgaOptions, branch_saturation, rga_o
from .ring import DiffRing
from .systems import DiffSystem, classify, technical_assumption
from .triangulate import RunLog, TriangulateOptions, rank_measure, triangulate

__all__ = [
    "AssumptionUnverified",
    "Budget",
    "ConstantPolynomial",
    "Decomposition",
    "DerivVar",
    "DiffAlgError",
    "DiffPoly",
    "DiffRing",
    "DiffSystem",
    "Magnitude",
    "MissingAssignment",
    "NotApplicable",
    "NotNondifferential",
    "NothingToReduce",
    "OrderTooHigh",
    "PreconditionViolated",
    "Ranking",
    "ResourceExceeded",
    "RgaOptions",
    "RunLog",
    "SpecSyntaxError",
    "SystemSpec",
    "TriangulateOptions",
    "UndeclaredVariable",
    "VectorField",
    "Verdict",
    "ZeroPolynomial",
    "branch_saturation",
    "check_invariant",
    "check_sufficient",
    "classify",
    "classify_branch",
    "degree_audit",
    "diff_pseudo_div",
    "differentiate",
    "evaluate",
    "fib",
    "groebner_basis",
    "ideal_equal",
    "initial",
    "intersect",
    "lie",
    "lie_closure",
    "lis",
    "member",
    "normal_form",
    "parse_expression",
    "parse_spec",
    "partial",
    "pdiv_step",
    "r_bound",
    "radical_member",
    "rank_measure",
    "rga_o",
    "rtower",
    "saturation",
    "separant",
    "sign_change_witness",
    "substitute_derivatives",
    "t_bound",
    "tail",
    "technical_assumption",
    "tower",
    "triangulate",
    "verify_trace",
]

__version__ = "0.1.0"
