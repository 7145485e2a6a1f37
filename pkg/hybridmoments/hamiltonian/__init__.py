from .eom import EomSystem, centroid_layout, generate_eom, state_layout
from .expansion import effective_hamiltonian, expectation_in_moments
from .models import (
    HamiltonianTerm,
    PolyHamiltonian,
    centroid_monomial,
    is_harmonic,
    parse_coefficient,
    parse_rational,
    symmetric_ordering_to_weyl,
)

__all__ = [
    "centroid_layout",
    "centroid_monomial",
    "effective_hamiltonian",
    "EomSystem",
    "expectation_in_moments",
    "generate_eom",
    "HamiltonianTerm",
    "is_harmonic",
    "parse_coefficient",
    "parse_rational",
    "PolyHamiltonian",
    "state_layout",
    "symmetric_ordering_to_weyl",
]
