"""Two-party lower-bound gadgets: builders, handoff validation and dichotomy checks."""

from .check import (
    DichotomyReport,
    HandoffReport,
    all_inputs,
    build_gadget,
    check_handoff,
    check_witness,
    expected_vertices,
    interleave_mutant,
    measure,
    read_sidecar,
    rebuild,
    validate_handoff,
    verify_dichotomy,
    write_sidecar,
)
from .core import DISJ_KINDS, PERM_KINDS, DichotomyClaim, GadgetInstance, GadgetKind, PermInput, parse_perm
from .disj import build_disj_gadget
from .perm import build_perm_gadget

__all__ = [
    "DISJ_KINDS",
    "PERM_KINDS",
    "DichotomyClaim",
    "DichotomyReport",
    "GadgetInstance",
    "GadgetKind",
    "HandoffReport",
    "PermInput",
    "all_inputs",
    "build_disj_gadget",
    "build_gadget",
    "build_perm_gadget",
    "check_handoff",
    "check_witness",
    "expected_vertices",
    "interleave_mutant",
    "measure",
    "parse_perm",
    "read_sidecar",
    "rebuild",
    "validate_handoff",
    "verify_dichotomy",
    "write_sidecar",
]
