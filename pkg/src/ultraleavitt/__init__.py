"""Ultragraphs, their set algebras, quotients and Leavitt path algebras."""

from .algebra import Element, LeavittContext, Monomial, nonzero_certify, rep_apply
from .core import (
    EdgeDecl,
    Ultragraph,
    UltragraphError,
    check_tilde_eq_GA,
    edge_matrix,
    from_matrix,
    import_graph,
    make_ultragraph,
    path_endpoints,
    paths_up_to,
    singular_vertices,
    tilde,
    validate,
)
from .ideals import (
    AdmissiblePair,
    HSCollection,
    admissible_pairs,
    breaking_vertices,
    contains,
    gap_idempotent,
    hs_closure,
    is_hereditary,
    is_saturated,
)
from .quotient import QuotientUltragraph, build_overline, build_quotient, class_eq, class_op, class_reduce
from .rings import INTEGERS, RATIONALS, Ring, mod
from .setalgebra import atoms, brute_closure, in_algebra, is_unital, vset_op
from .vsets import Trace, VSet, parse_vset

__all__ = [
    "AdmissiblePair",
    "EdgeDecl",
    "Element",
    "HSCollection",
    "INTEGERS",
    "LeavittContext",
    "Monomial",
    "QuotientUltragraph",
    "RATIONALS",
    "Ring",
    "Trace",
    "Ultragraph",
    "UltragraphError",
    "VSet",
    "admissible_pairs",
    "atoms",
    "breaking_vertices",
    "brute_closure",
    "build_overline",
    "build_quotient",
    "check_tilde_eq_GA",
    "class_eq",
    "class_op",
    "class_reduce",
    "contains",
    "edge_matrix",
    "from_matrix",
    "gap_idempotent",
    "hs_closure",
    "import_graph",
    "in_algebra",
    "is_hereditary",
    "is_saturated",
    "is_unital",
    "make_ultragraph",
    "mod",
    "nonzero_certify",
    "parse_vset",
    "path_endpoints",
    "paths_up_to",
    "rep_apply",
    "singular_vertices",
    "tilde",
    "validate",
    "vset_op",
]
