"""Combinatorial invariants of the endoscopic classification.

Thin wrapper over the compiled extension; see the package README for the
JSON schemas the string-based entry points expect.
"""

from ._core import (
    centralizer,
    classify,
    constants_i,
    lir_pairing,
    lir_scalar,
    lir_verify,
    run_cli,
    run_golden,
)

__all__ = [
    "centralizer",
    "classify",
    "constants_i",
    "lir_pairing",
    "lir_scalar",
    "lir_verify",
    "run_cli",
    "run_golden",
]
