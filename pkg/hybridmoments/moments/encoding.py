from __future__ import annotations

from typing import List, Optional, Tuple, Union

from ..errors import KeyFormatError
from .types import CentroidSymbol, MomentKey, VariableKind

Symbol = Union[CentroidSymbol, MomentKey]

KEY_PREFIX = "d["


def format_key(key: MomentKey) -> str:
    """Serialize a key as ``d[a1,b1;a2,b2;...]``."""
    return KEY_PREFIX + ";".join(f"{a},{b}" for a, b in key.exponents) + "]"


def _is_decimal(text: str) -> bool:
    return text.isascii() and text.isdigit()


def parse_key(text: str, n_dof: Optional[int] = None) -> MomentKey:
    """Parse ``d[2,1;0,3]``; errors carry the character position."""
    offset = len(text) - len(text.lstrip())
    body = text.strip()
    if not body.startswith(KEY_PREFIX):
        raise KeyFormatError("Expected 'd['", text, offset)
    if not body.endswith("]"):
        raise KeyFormatError("Expected closing ']'", text, offset + len(body))
    position = offset + len(KEY_PREFIX)
    pairs: List[Tuple[int, int]] = []
    for chunk in body[len(KEY_PREFIX) : -1].split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise KeyFormatError("Expected an exponent pair 'a,b'", text, position)
        cursor = position
        values = []
        for part in parts:
            stripped = part.strip()
            if not _is_decimal(stripped):
                raise KeyFormatError(f"Invalid exponent '{part}'", text, cursor)
            values.append(int(stripped))
            cursor += len(part) + 1
        pairs.append((values[0], values[1]))
        position += len(chunk) + 1
    if n_dof is not None and len(pairs) != n_dof:
        raise KeyFormatError(f"Key has {len(pairs)} degrees of freedom, expected {n_dof}", text, offset)
    return MomentKey(tuple(pairs))


def parse_centroid(text: str, n_dof: Optional[int] = None) -> CentroidSymbol:
    """Parse canonical centroid names ``q1``, ``p2``."""
    name = text.strip()
    if len(name) < 2 or name[0] not in ("q", "p") or not _is_decimal(name[1:]):
        raise KeyFormatError("Expected a centroid name like 'q1' or 'p1'", text, 0)
    index = int(name[1:])
    if index < 1 or (n_dof is not None and index > n_dof):
        raise KeyFormatError(f"Degree of freedom {index} out of range", text, 1)
    return CentroidSymbol(index, VariableKind(name[0]))


def parse_symbol(text: str, n_dof: Optional[int] = None) -> Symbol:
    if text.strip().startswith(KEY_PREFIX):
        return parse_key(text, n_dof)
    return parse_centroid(text, n_dof)
