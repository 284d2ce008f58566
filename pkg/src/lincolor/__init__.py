"""Linear and centered colorings, treedepth decompositions, optimal vertex
ranking of trees, interval-graph conversions and the reduction from CNF-SAT
to finding a path without a center."""

from .colorings import (
    CenteredWitness,
    Coloring,
    NonCenteredPath,
    check_certificate,
    chi_cen_exact,
    chi_lin_exact,
    is_centered,
    is_linear,
    verify_centered,
    verify_linear,
)
from .errors import BudgetExceeded, NotATree, NotCentered, NotLinear, PreconditionError
from .graph import Graph, Path
from .interval import IntervalRepresentation, centered_from_linear, clique_ordering, prevailing
from .ranking import schaffer_rank
from .sat import CnfFormula, build_gadget, decide_equivalence, parse_dimacs, preprocess
from .treedepth import (
    TreedepthDecomposition,
    apex_restructure,
    canonical_coloring,
    canonical_decomposition,
    check_valid,
    treedepth_exact,
)

__all__ = [
    "BudgetExceeded", "CenteredWitness", "CnfFormula", "Coloring", "Graph", "IntervalRepresentation",
    "NonCenteredPath", "NotATree", "NotCentered", "NotLinear", "Path", "PreconditionError",
    "TreedepthDecomposition", "apex_restructure", "build_gadget", "canonical_coloring",
    "canonical_decomposition", "centered_from_linear", "check_certificate", "check_valid",
    "chi_cen_exact", "chi_lin_exact", "clique_ordering", "decide_equivalence", "is_centered",
    "is_linear", "parse_dimacs", "prevailing", "preprocess", "schaffer_rank", "treedepth_exact",
    "verify_centered", "verify_linear",
]
