"""Leavitt path algebra arithmetic over ultragraphs and quotient ultragraphs."""

from .elements import (
    Element,
    LeavittContext,
    Monomial,
    degree_decompose,
    format_element,
    mono_mul,
    normalize,
)
from .membership import ideal_membership, quotient_context, quotient_image, recover_HS, recovers
from .presentations import ck_check, defining_relations, leavitt_relations, tilde_iso_check
from .representation import INCONCLUSIVE, RepState, Representation, nonzero_certify, rep_apply

__all__ = [
    "Element",
    "INCONCLUSIVE",
    "LeavittContext",
    "Monomial",
    "RepState",
    "Representation",
    "ck_check",
    "defining_relations",
    "degree_decompose",
    "format_element",
    "ideal_membership",
    "leavitt_relations",
    "mono_mul",
    "nonzero_certify",
    "normalize",
    "quotient_context",
    "quotient_image",
    "recover_HS",
    "recovers",
    "rep_apply",
    "tilde_iso_check",
]
