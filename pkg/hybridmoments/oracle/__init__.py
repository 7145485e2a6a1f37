"""Brute-force operator algebra used to verify the closed bracket formulas."""

from .identities import verify_reordering_identities
from .moments import (
    RawMoment,
    central_to_raw,
    clear_oracle_cache,
    oracle_bracket,
    oracle_moment_bracket,
    raw_to_central,
)
from .observables import HybridObservable, observable_bracket, r_map
from .operators import OperatorExpression, commutator, normal_order, weyl_monomial
from .report import CheckResult, VerificationReport
from .scalars import HbarScalar
from .suites import (
    bracket_grid_report,
    jacobi_report,
    lemma_report,
    run_all,
    verify_bracket_equivalence,
    verify_centroid_lemma,
    verify_harmonic_decoupling,
    verify_hbar_zero_reduction,
    verify_jacobi,
    verify_r_properties,
    verify_sector_reductions,
)

__all__ = [
    "bracket_grid_report",
    "central_to_raw",
    "CheckResult",
    "clear_oracle_cache",
    "commutator",
    "HbarScalar",
    "HybridObservable",
    "jacobi_report",
    "lemma_report",
    "normal_order",
    "observable_bracket",
    "OperatorExpression",
    "oracle_bracket",
    "oracle_moment_bracket",
    "r_map",
    "RawMoment",
    "raw_to_central",
    "run_all",
    "VerificationReport",
    "verify_bracket_equivalence",
    "verify_centroid_lemma",
    "verify_harmonic_decoupling",
    "verify_hbar_zero_reduction",
    "verify_jacobi",
    "verify_r_properties",
    "verify_reordering_identities",
    "verify_sector_reductions",
    "weyl_monomial",
]
