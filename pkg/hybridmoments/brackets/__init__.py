from .coefficients import alpha_cap, k_coefficient, odd_alpha_vectors
from .engine import (
    as_polynomial,
    centroid_bracket,
    clear_bracket_cache,
    moment_bracket,
    poly_bracket,
    symbol_bracket,
)
from .jacobi import (
    HYBRID_SEED_TRIPLE,
    JacobiWitness,
    exhaustive_triples,
    find_jacobi_witness,
    first_nonzero_jacobiator,
    jacobiator,
    random_triples,
)

__all__ = [
    "alpha_cap",
    "as_polynomial",
    "centroid_bracket",
    "clear_bracket_cache",
    "exhaustive_triples",
    "find_jacobi_witness",
    "first_nonzero_jacobiator",
    "HYBRID_SEED_TRIPLE",
    "jacobiator",
    "JacobiWitness",
    "k_coefficient",
    "moment_bracket",
    "odd_alpha_vectors",
    "poly_bracket",
    "random_triples",
    "symbol_bracket",
]
