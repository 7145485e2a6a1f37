from .polynomial import (
    MomentPolynomial,
    Polynomial,
    poly_add,
    poly_derivative,
    poly_eval,
    poly_mul,
    poly_sum,
)

__all__ = [
    "MomentPolynomial",
    "Polynomial",
    "poly_add",
    "poly_derivative",
    "poly_eval",
    "poly_mul",
    "poly_sum",
]
