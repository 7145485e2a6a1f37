from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import chain, combinations, islice, product
from typing import Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from ..algebra.polynomial import Polynomial
from ..moments.enumerate import enumerate_moments
from ..moments.types import BracketKind, MomentKey, Sector, SystemSignature, is_pure_sector
from .engine import poly_bracket

logger = logging.getLogger(__name__)

Triple = Tuple[MomentKey, MomentKey, MomentKey]

# Δ(q³x), Δ(qpx²), Δ(qk³) for one classical and one quantum degree of freedom;
# their hybrid Jacobiator is 9/2·ħ²·Δ(q⁴).
HYBRID_SEED_TRIPLE: Triple = (
    MomentKey.of((3, 0), (1, 0)),
    MomentKey.of((1, 1), (2, 0)),
    MomentKey.of((1, 0), (0, 3)),
)


@dataclass(frozen=True)
class JacobiWitness:
    keys: Triple
    value: Polynomial

    def render(self) -> str:
        names = ", ".join(key.render() for key in self.keys)
        return f"J({names}) = {self.value.render()}"


def jacobiator(k1: MomentKey, k2: MomentKey, k3: MomentKey, sig: SystemSignature, kind: BracketKind) -> Polynomial:
    """{k1,{k2,k3}} + {k2,{k3,k1}} + {k3,{k1,k2}}."""
    return (
        poly_bracket(k1, poly_bracket(k2, k3, sig, kind), sig, kind)
        + poly_bracket(k2, poly_bracket(k3, k1, sig, kind), sig, kind)
        + poly_bracket(k3, poly_bracket(k1, k2, sig, kind), sig, kind)
    )


def exhaustive_triples(sig: SystemSignature, max_order: int) -> Iterator[Triple]:
    keys = enumerate_moments(sig, 2, max_order)
    return iter(product(keys, repeat=3))


def random_triples(sig: SystemSignature, max_order: int, samples: int, seed: int = 0) -> Iterator[Triple]:
    keys = enumerate_moments(sig, 2, max_order)
    rng = np.random.default_rng(seed)
    for row in rng.integers(0, len(keys), size=(samples, 3)):
        yield tuple(keys[int(index)] for index in row)  # type: ignore[misc]


def first_nonzero_jacobiator(
    triples: Iterable[Triple], sig: SystemSignature, kind: BracketKind
) -> Tuple[int, Optional[JacobiWitness]]:
    """Scan triples; returns (triples checked, first nonzero witness or None)."""
    checked = 0
    for triple in triples:
        checked += 1
        value = jacobiator(*triple, sig, kind)
        if value:
            return checked, JacobiWitness(triple, value)
    return checked, None


def _witness_candidates(sig: SystemSignature, max_order: int) -> Iterator[Triple]:
    if sig.n_dof == 2 and max_order >= 4:
        yield HYBRID_SEED_TRIPLE
    keys = sorted(
        enumerate_moments(sig, 2, max_order),
        key=lambda key: (is_pure_sector(key, sig) is not Sector.MIXED, -key.order, key.sort_key),
    )
    yield from combinations(keys, 3)


def find_jacobi_witness(
    sig: SystemSignature,
    kind: BracketKind,
    max_order: int,
    limit: Optional[int] = None,
    seeds: Sequence[Triple] = (),
) -> Optional[JacobiWitness]:
    """Search low-order triples (mixed, high-order keys first) for a nonzero Jacobiator."""
    candidates: Iterable[Triple] = chain(seeds, _witness_candidates(sig, max_order))
    if limit is not None:
        candidates = islice(candidates, limit)
    checked, witness = first_nonzero_jacobiator(candidates, sig, kind)
    logger.info("Jacobi witness search over %d triples: %s", checked, witness.render() if witness else "none")
    return witness
