from .encoding import format_key, parse_centroid, parse_key, parse_symbol
from .enumerate import composition_count, enumerate_moments, weak_compositions
from .types import (
    BracketKind,
    CentroidSymbol,
    MomentKey,
    Sector,
    SystemSignature,
    VariableKind,
    is_pure_sector,
    moment_order,
)

__all__ = [
    "BracketKind",
    "CentroidSymbol",
    "composition_count",
    "enumerate_moments",
    "format_key",
    "is_pure_sector",
    "moment_order",
    "MomentKey",
    "parse_centroid",
    "parse_key",
    "parse_symbol",
    "Sector",
    "SystemSignature",
    "VariableKind",
    "weak_compositions",
]
