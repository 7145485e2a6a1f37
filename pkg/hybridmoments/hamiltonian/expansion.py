from __future__ import annotations

import logging
from fractions import Fraction
from math import factorial
from typing import List

from ..algebra.polynomial import Polynomial, poly_sum
from ..moments.enumerate import enumerate_moments
from ..moments.types import CentroidSymbol, MomentKey, SystemSignature
from .models import PolyHamiltonian

logger = logging.getLogger(__name__)


def _partial(poly: Polynomial, key: MomentKey) -> Polynomial:
    for index, (a, b) in enumerate(key.exponents, start=1):
        for symbol, count in ((CentroidSymbol.position(index), a), (CentroidSymbol.momentum(index), b)):
            for _ in range(count):
                poly = poly.derivative(symbol)
                if not poly:
                    return poly
    return poly


def expectation_in_moments(observable: Polynomial, sig: SystemSignature, n_max: int) -> Polynomial:
    """⟨A⟩ for a polynomial Weyl symbol A: Taylor expansion around the centroids, moments above ``n_max`` dropped."""
    if n_max < 2:
        raise ValueError("Truncation order must be at least 2")
    top = min(observable.degree, n_max)
    pieces: List[Polynomial] = [observable]
    if top >= 2:
        for key in enumerate_moments(sig, 2, top):
            derivative = _partial(observable, key)
            if not derivative:
                continue
            weight = Fraction(1)
            for a, b in key.exponents:
                weight /= factorial(a) * factorial(b)
            pieces.append(derivative * Polynomial.moment(key) * weight)
    return poly_sum(pieces)


def effective_hamiltonian(hamiltonian: PolyHamiltonian, sig: SystemSignature, n_max: int) -> Polynomial:
    hamiltonian.check_signature(sig)
    result = expectation_in_moments(hamiltonian.polynomial, sig, n_max)
    logger.debug("H_eff for %s at N_max=%d has %d terms", sig.label, n_max, len(result))
    return result
