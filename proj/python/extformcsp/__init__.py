"""Exact extended-formulation LP pipeline for bounded-treewidth CSP.

Thin wrapper over the C++ core; all payloads are JSON strings in the same
formats the `extform` CLI uses.
"""

from ._extform import (
    CspError,
    chromatic_number,
    emit_lp,
    oracle,
    reduce,
    solve,
    validate,
)

__all__ = [
    "CspError",
    "chromatic_number",
    "emit_lp",
    "oracle",
    "reduce",
    "solve",
    "validate",
]
