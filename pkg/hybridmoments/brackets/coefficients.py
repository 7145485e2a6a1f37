from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterator, Sequence, Tuple


@lru_cache(maxsize=None)
def k_coefficient(a: int, b: int, m: int, n: int, alpha: int) -> Fraction:
    """K^alpha_{abmn}; zero when every binomial product vanishes."""
    if alpha < 0:
        return Fraction(0)
    total = 0
    for k in range(alpha + 1):
        weight = comb(a, alpha - k) * comb(b, k) * comb(m, k) * comb(n, alpha - k)
        if weight:
            total += (-1) ** k * factorial(k) * factorial(alpha - k) * weight
    return Fraction(total)


def alpha_cap(a: int, b: int, m: int, n: int) -> int:
    return min(a + m, b + n, a + b, m + n)


def odd_alpha_vectors(
    caps: Sequence[int], quantum_mask: Sequence[bool]
) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Yield (alpha, L) with sum(alpha) = 2L + 1 and 0 <= alpha_j <= caps[j].

    Vectors with L >= 1 may only load degrees of freedom flagged quantum.
    """
    ranges = [range(cap + 1) if quantum else range(min(cap, 1) + 1) for cap, quantum in zip(caps, quantum_mask)]
    for alpha in product(*ranges):
        total = sum(alpha)
        if total % 2 == 0:
            continue
        if total > 1 and any(value and not quantum for value, quantum in zip(alpha, quantum_mask)):
            continue
        yield alpha, (total - 1) // 2
