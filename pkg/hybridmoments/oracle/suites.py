"""Verification grids comparing the closed bracket formulas with the oracle."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

from ..algebra.polynomial import Polynomial
from ..brackets.engine import moment_bracket
from ..brackets.jacobi import exhaustive_triples, find_jacobi_witness, first_nonzero_jacobiator, random_triples
from ..errors import VerificationError
from ..hamiltonian.eom import generate_eom
from ..hamiltonian.models import PolyHamiltonian, is_harmonic
from ..moments.enumerate import enumerate_moments
from ..moments.types import BracketKind, CentroidSymbol, MomentKey, Sector, SystemSignature, is_pure_sector
from .moments import exponent_tuples, oracle_bracket
from .observables import HybridObservable, observable_bracket, r_map
from .operators import commutator, normal_form, weyl_monomial, weyl_normal_form
from .report import CheckResult, VerificationReport
from .scalars import HbarScalar

logger = logging.getLogger(__name__)

DEFAULT_JACOBI_SAMPLES = 200
HYBRID_WITNESS_ORDER = 4
R_MAX_EXPONENT = 3


def _pairs(keys: Sequence[MomentKey]) -> Iterable[Tuple[MomentKey, MomentKey]]:
    return product(keys, repeat=2)


# -- R map and observable-level bracket -----------------------------------


def _weyl_basis(n_dof: int, max_exponent: int) -> List[HybridObservable]:
    return [HybridObservable.monomial(0, exps) for exps in exponent_tuples(n_dof, max_exponent)]


def _first_failure(name: str, cases: Iterable[Tuple[str, bool]]) -> CheckResult:
    checked = 0
    for label, ok in cases:
        checked += 1
        if not ok:
            return CheckResult(name, False, checked, label)
    return CheckResult(name, True, checked)


def verify_r_properties(max_exponent: int = R_MAX_EXPONENT) -> VerificationReport:
    """Symmetry, bilinearity, identity and nesting of R; axioms and sector reductions of the hybrid bracket."""
    report = VerificationReport("R map and hybrid bracket")
    basis = _weyl_basis(1, max_exponent)
    unit = HybridObservable.monomial(0, ((0, 0),))
    two, three = Fraction(2), Fraction(-3, 2)

    report.add(
        _first_failure(
            "r_symmetric",
            ((f"R({a.render()}, {b.render()})", r_map(a, b) == r_map(b, a)) for a, b in product(basis, repeat=2)),
        )
    )
    report.add(
        _first_failure(
            "r_bilinear",
            (
                (
                    f"R(2A - 3/2B, C) at A={a.render()}, B={b.render()}, C={c.render()}",
                    r_map(a.scale(two) + b.scale(three), c) == r_map(a, c).scale(two) + r_map(b, c).scale(three),
                )
                for a, b, c in product(basis[:8], repeat=3)
            ),
        )
    )
    report.add(_first_failure("r_identity", ((f"R(1, {g.render()})", r_map(unit, g) == g) for g in basis)))
    report.add(
        _first_failure(
            "r_nesting",
            (
                (
                    f"R({a.render()}, R({b.render()}, {c.render()}))",
                    r_map(a, r_map(b, c)) == r_map(b, r_map(c, a)) == r_map(c, r_map(a, b)),
                )
                for a, b, c in product(basis, repeat=3)
            ),
        )
    )

    hybrid = [HybridObservable.monomial(1, exps) for exps in exponent_tuples(2, 1)]
    report.add(
        _first_failure(
            "bracket_antisymmetric",
            (
                (f"[[{a.render()}, {b.render()}]]", observable_bracket(a, b) == -observable_bracket(b, a))
                for a, b in product(hybrid, repeat=2)
            ),
        )
    )
    report.add(
        _first_failure(
            "bracket_bilinear",
            (
                (
                    f"[[2A - 3/2B, C]] at A={a.render()}, B={b.render()}, C={c.render()}",
                    observable_bracket(a.scale(two) + b.scale(three), c)
                    == observable_bracket(a, c).scale(two) + observable_bracket(b, c).scale(three),
                )
                for a, b, c in product(hybrid[:6], repeat=3)
            ),
        )
    )
    report.add(_classical_quantum_vanish())
    report.add(_classical_sector_reduction())
    report.add(_quantum_sector_reduction())
    return report


def _classical_quantum_vanish() -> CheckResult:
    cases = []
    for f, g in product(exponent_tuples(1, 2), repeat=2):
        left = HybridObservable.product(f, ((0, 0),))
        right = HybridObservable.product(((0, 0),), g)
        cases.append((f"[[{f}, {g}]]", not observable_bracket(left, right)))
    return _first_failure("classical_quantum_bracket_vanishes", cases)


def _classical_sector_reduction() -> CheckResult:
    cases = []
    for (f,), (g,) in product(exponent_tuples(1, 2), repeat=2):
        left = HybridObservable.product(((f[0], f[1]),), ((0, 0),))
        right = HybridObservable.product(((g[0], g[1]),), ((0, 0),))
        coefficient = f[0] * g[1] - f[1] * g[0]
        if coefficient:
            expected = HybridObservable.product(
                ((f[0] + g[0] - 1, f[1] + g[1] - 1),), ((0, 0),), HbarScalar.of(coefficient)
            )
        else:
            expected = HybridObservable(1, 2)
        cases.append((f"{{{f}, {g}}}_c", observable_bracket(left, right) == expected))
    return _first_failure("classical_sector_is_poisson_bracket", cases)


def _quantum_sector_reduction() -> CheckResult:
    cases = []
    for f, g in product(exponent_tuples(1, 2), repeat=2):
        left = HybridObservable.product(((0, 0),), f)
        right = HybridObservable.product(((0, 0),), g)
        bracket = observable_bracket(left, right)
        from_bracket = {}
        for exps, value in bracket.terms.items():
            for normal, factor in weyl_normal_form(exps[1:]).items():
                from_bracket[normal] = from_bracket.get(normal, HbarScalar()) + value * factor
        words = normal_form(commutator(weyl_monomial(f), weyl_monomial(g)), 1)
        expected = {exps: value.divide_by_i_hbar() for exps, value in words.items()}
        actual = {exps: value for exps, value in from_bracket.items() if value}
        cases.append((f"[[{f}, {g}]] against commutator/(i hbar)", actual == expected))
    return _first_failure("quantum_sector_is_commutator", cases)


# -- moment brackets --------------------------------------------------------


def verify_bracket_equivalence(sig: SystemSignature, kind: BracketKind, max_order: int) -> VerificationReport:
    """Closed-form bracket against the oracle, plus antisymmetry and reality, on every key pair."""
    keys = enumerate_moments(sig, 2, max_order)
    report = VerificationReport(f"brackets {sig.label} {kind.value} up to order {max_order}")
    checked = 0
    mismatch: Optional[str] = None
    antisymmetry: Optional[str] = None
    reality: Optional[str] = None
    for key1, key2 in _pairs(keys):
        checked += 1
        engine = moment_bracket(key1, key2, sig, kind)
        if antisymmetry is None and engine != -moment_bracket(key2, key1, sig, kind):
            antisymmetry = f"{{{key1.render()}, {key2.render()}}} is not antisymmetric"
        try:
            oracle = oracle_bracket(key1, key2, sig, kind)
        except VerificationError as exc:
            reality = reality or f"{{{key1.render()}, {key2.render()}}}: {exc}"
            continue
        if mismatch is None and engine != oracle:
            mismatch = f"{{{key1.render()}, {key2.render()}}}: engine {engine.render()} != oracle {oracle.render()}"
            logger.warning("Bracket mismatch for %s", mismatch)
    report.add(CheckResult("engine_matches_oracle", mismatch is None, checked, mismatch))
    report.add(CheckResult("antisymmetry", antisymmetry is None, checked, antisymmetry))
    report.add(CheckResult("real_coefficients", reality is None, checked, reality))
    return report


def verify_hbar_zero_reduction(sig: SystemSignature, max_order: int) -> CheckResult:
    keys = enumerate_moments(sig, 2, max_order)
    cases = (
        (
            f"{{{k1.render()}, {k2.render()}}}",
            moment_bracket(k1, k2, sig, BracketKind.QUANTUM).truncate_hbar()
            == moment_bracket(k1, k2, sig, BracketKind.CLASSICAL),
        )
        for k1, k2 in _pairs(keys)
    )
    return _first_failure(f"hbar_zero_reduction_{sig.label}", cases)


def verify_sector_reductions(sig: SystemSignature, max_order: int) -> CheckResult:
    """Hybrid bracket restricted to pure sectors: zero across sectors, quantum or classical within one."""
    keys = enumerate_moments(sig, 2, max_order)
    cases = []
    for k1, k2 in _pairs(keys):
        s1, s2 = is_pure_sector(k1, sig), is_pure_sector(k2, sig)
        if Sector.MIXED in (s1, s2):
            continue
        hybrid = moment_bracket(k1, k2, sig, BracketKind.HYBRID)
        if s1 is not s2:
            expected = Polynomial.zero()
        elif s1 is Sector.QUANTUM:
            expected = moment_bracket(k1, k2, sig, BracketKind.QUANTUM)
        else:
            expected = moment_bracket(k1, k2, sig, BracketKind.CLASSICAL)
        cases.append((f"{{{k1.render()}, {k2.render()}}} ({s1.value}/{s2.value})", hybrid == expected))
    return _first_failure(f"sector_reductions_{sig.label}", cases)


def verify_centroid_lemma(sig: SystemSignature, max_order: int, kind: BracketKind = BracketKind.QUANTUM) -> CheckResult:
    """Oracle brackets of centroids with central moments vanish."""
    centroids = [
        symbol
        for index in range(1, sig.n_dof + 1)
        for symbol in (CentroidSymbol.position(index), CentroidSymbol.momentum(index))
    ]
    cases = (
        (f"{{{c.render()}, {key.render()}}}", not oracle_bracket(c, key, sig, kind))
        for c in centroids
        for key in enumerate_moments(sig, 2, max_order)
    )
    return _first_failure(f"centroid_moment_brackets_vanish_{sig.label}_{kind.value}", cases)


def bracket_grid_report(single_dof_order: int = 4, two_dof_order: int = 3) -> VerificationReport:
    """Oracle equivalence, ħ=0 and sector reductions over one and two degrees of freedom."""
    report = VerificationReport("bracket grid")
    grid = [
        (SystemSignature(0, 1), BracketKind.QUANTUM, single_dof_order),
        (SystemSignature(1, 0), BracketKind.CLASSICAL, single_dof_order),
        (SystemSignature(0, 2), BracketKind.QUANTUM, two_dof_order),
        (SystemSignature(2, 0), BracketKind.CLASSICAL, two_dof_order),
        (SystemSignature(1, 1), BracketKind.HYBRID, two_dof_order),
        (SystemSignature(1, 1), BracketKind.QUANTUM, two_dof_order),
        (SystemSignature(1, 1), BracketKind.CLASSICAL, two_dof_order),
    ]
    for sig, kind, order in grid:
        logger.info("Bracket grid %s %s up to order %d", sig.label, kind.value, order)
        sub = verify_bracket_equivalence(sig, kind, order)
        for check in sub.checks:
            check.name = f"{check.name}[{sig.label},{kind.value}]"
        report.extend(sub)
    report.add(verify_hbar_zero_reduction(SystemSignature(0, 1), single_dof_order))
    report.add(verify_hbar_zero_reduction(SystemSignature(0, 2), two_dof_order))
    report.add(verify_sector_reductions(SystemSignature(1, 1), two_dof_order))
    return report


def lemma_report(max_order: int = 4) -> VerificationReport:
    report = VerificationReport("centroid lemma")
    for sig in (SystemSignature(0, 1), SystemSignature(0, 2), SystemSignature(1, 1)):
        kind = BracketKind.HYBRID if sig.n_classical else BracketKind.QUANTUM
        report.add(verify_centroid_lemma(sig, max_order, kind))
    return report


# -- Jacobi and harmonic decoupling -----------------------------------------


def verify_jacobi(
    sig: SystemSignature,
    kind: BracketKind,
    max_order: int,
    samples: int = DEFAULT_JACOBI_SAMPLES,
    seed: int = 0,
    witness_order: int = HYBRID_WITNESS_ORDER,
    witness_limit: Optional[int] = None,
) -> CheckResult:
    """Zero Jacobiator for Lie kinds; a nonzero witness for the hybrid kind on a split signature."""
    if kind is BracketKind.HYBRID and sig.n_classical and sig.n_quantum:
        witness = find_jacobi_witness(sig, kind, witness_order, limit=witness_limit)
        name = f"hybrid_jacobi_witness_{sig.label}"
        if witness is None:
            return CheckResult(name, False, 0, f"no nonzero Jacobiator up to order {witness_order}")
        return CheckResult(name, True, 1, witness.render())
    if sig.n_dof == 1:
        triples = exhaustive_triples(sig, max_order)
    else:
        triples = random_triples(sig, max_order, samples, seed)
    checked, witness = first_nonzero_jacobiator(triples, sig, kind)
    name = f"jacobi_identity_{sig.label}_{kind.value}"
    if witness is not None:
        return CheckResult(name, False, checked, witness.render())
    return CheckResult(name, True, checked)


def jacobi_report(
    kinds: Sequence[BracketKind],
    max_order: int = 3,
    samples: int = DEFAULT_JACOBI_SAMPLES,
    seed: int = 0,
    witness_order: int = HYBRID_WITNESS_ORDER,
) -> VerificationReport:
    report = VerificationReport("jacobi")
    for kind in kinds:
        if kind is BracketKind.HYBRID:
            report.add(verify_jacobi(SystemSignature(1, 1), kind, max_order, witness_order=witness_order))
            continue
        report.add(verify_jacobi(SystemSignature(0, 1), kind, max_order))
        report.add(verify_jacobi(SystemSignature(0, 2), kind, max_order, samples, seed))
    return report


def verify_harmonic_decoupling(hamiltonian: PolyHamiltonian, sig: SystemSignature, n_max: int = 4) -> CheckResult:
    """Each moment couples only to moments of its own order; no ħ²; identical across bracket kinds."""
    name = f"harmonic_decoupling_{hamiltonian.name or 'H'}_{n_max}"
    if not is_harmonic(hamiltonian):
        return CheckResult(name, False, 0, "Hamiltonian is not harmonic")
    systems = [generate_eom(hamiltonian, sig, kind, n_max) for kind in BracketKind]
    reference = systems[0]
    checked = 0
    for symbol, rhs in reference.items():
        checked += 1
        if rhs.max_hbar2_power:
            return CheckResult(name, False, checked, f"d{symbol.render()}/dt carries hbar terms")
        for (mono, _), _ in rhs.items():
            if isinstance(symbol, MomentKey):
                ok = len(mono) == 1 and mono[0][1] == 1 and isinstance(mono[0][0], MomentKey)
                ok = ok and mono[0][0].order == symbol.order
            else:
                ok = all(isinstance(s, CentroidSymbol) for s, _ in mono)
            if not ok:
                return CheckResult(name, False, checked, f"d{symbol.render()}/dt = {rhs.render()} mixes orders")
    for other in systems[1:]:
        if other != reference:
            return CheckResult(name, False, checked, f"{other.kind.value} equations differ from {reference.kind.value}")
    return CheckResult(name, True, checked)


def run_all(max_exponent: int = 4, jacobi_order: int = 3) -> VerificationReport:
    from .identities import verify_reordering_identities

    report = VerificationReport("all")
    report.extend(verify_reordering_identities(max_exponent))
    report.extend(verify_r_properties())
    report.extend(bracket_grid_report())
    report.extend(lemma_report())
    report.extend(jacobi_report(list(BracketKind), jacobi_order))
    oscillator = PolyHamiltonian.coupled_oscillator(Fraction(17, 2), Fraction(1, 2))
    report.add(verify_harmonic_decoupling(oscillator, SystemSignature(1, 1)))
    return report
