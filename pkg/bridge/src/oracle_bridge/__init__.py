"""One-directional cross-check of exported chain-strata classes against an
external tautological-ring package."""

from .bridge import BridgeJob, evaluate_and_compare, verdict_line
from .parser import ChainTerm, ParseError, parse_export, render_export

__all__ = [
    "BridgeJob",
    "ChainTerm",
    "ParseError",
    "evaluate_and_compare",
    "parse_export",
    "render_export",
    "verdict_line",
]
