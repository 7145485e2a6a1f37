from __future__ import annotations

from math import comb
from typing import Iterator, Tuple

from .types import MomentKey, SystemSignature


def weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in weak_compositions(total - head, parts - 1):
            yield (head,) + tail


def composition_count(total: int, parts: int) -> int:
    return comb(total + parts - 1, parts - 1)


def enumerate_moments(sig: SystemSignature, min_order: int, max_order: int) -> Tuple[MomentKey, ...]:
    """Keys with min_order <= order <= max_order in graded colexicographic order."""
    if min_order < 2:
        raise ValueError("Moments of order 0 and 1 are not dynamical variables (min_order >= 2)")
    if max_order < min_order:
        raise ValueError("max_order must not be smaller than min_order")
    keys = []
    for order in range(min_order, max_order + 1):
        for flat in weak_compositions(order, 2 * sig.n_dof):
            keys.append(MomentKey(tuple(zip(flat[0::2], flat[1::2]))))
    keys.sort(key=lambda key: key.sort_key)
    return tuple(keys)
