"""Propositional LTL: parsing, lasso evaluation, tableau satisfiability and
fixed points of temporal operators (Yablo-style paradoxes as theorems)."""

from ._kernels import BACKEND
from .fixpoint import (
    FixpointReport,
    OperatorTemplate,
    apply,
    equivalence_chains,
    has_global_fixed_point,
    law_suite,
    paradox_suite,
)
from .formula import Formula, ParseError, closure, embed, parse, render, to_nnf
from .sat import (
    Consequence,
    NotValid,
    ResourceLimitError,
    Sat,
    TableauGraph,
    Unsat,
    Valid,
    build_tableau,
    is_consequence,
    is_satisfiable,
    is_valid,
)
from .trace import (
    LassoTrace,
    State,
    evaluate,
    globally_satisfies,
    parse_trace,
    render_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Consequence",
    "FixpointReport",
    "Formula",
    "LassoTrace",
    "NotValid",
    "OperatorTemplate",
    "ParseError",
    "ResourceLimitError",
    "Sat",
    "State",
    "TableauGraph",
    "Unsat",
    "Valid",
    "apply",
    "build_tableau",
    "closure",
    "embed",
    "equivalence_chains",
    "evaluate",
    "globally_satisfies",
    "has_global_fixed_point",
    "is_consequence",
    "is_satisfiable",
    "is_valid",
    "law_suite",
    "paradox_suite",
    "parse",
    "parse_trace",
    "render",
    "render_trace",
    "to_nnf",
]
