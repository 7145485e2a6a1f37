from __future__ import annotations

from functools import lru_cache
from typing import Dict, Mapping, Optional, Tuple

from .operators import ExponentPairs, multiply_normal_forms, normal_form_to_weyl, weyl_normal_form
from .scalars import ONE, HbarScalar


class HybridObservable:
    """Sum of products f̃ · (F̂)_Weyl.

    Each term is keyed by the exponents of every degree of freedom: the
    first ``n_classical`` pairs are the phase-space monomial f̃, the remaining
    pairs name the Weyl monomial F̂.
    """

    __slots__ = ("n_classical", "n_dof", "_terms")

    def __init__(self, n_classical: int, n_dof: int, terms: Optional[Mapping[ExponentPairs, HbarScalar]] = None) -> None:
        if not 0 <= n_classical <= n_dof:
            raise ValueError("Classical count must lie within 0..n_dof")
        self.n_classical = n_classical
        self.n_dof = n_dof
        clean: Dict[ExponentPairs, HbarScalar] = {}
        for exps, value in (terms or {}).items():
            exps = tuple((int(a), int(b)) for a, b in exps)
            if len(exps) != n_dof:
                raise ValueError(f"Observable term {exps} does not have {n_dof} degrees of freedom")
            clean[exps] = clean.get(exps, HbarScalar()) + value
        self._terms = {exps: value for exps, value in clean.items() if value}

    @classmethod
    def monomial(cls, n_classical: int, exps: ExponentPairs, coefficient: HbarScalar = ONE) -> "HybridObservable":
        return cls(n_classical, len(exps), {exps: coefficient})

    @classmethod
    def product(
        cls, classical_part: ExponentPairs, quantum_part: ExponentPairs, coefficient: HbarScalar = ONE
    ) -> "HybridObservable":
        """f̃(classical_part) · (F̂(quantum_part))_Weyl."""
        exps = tuple(classical_part) + tuple(quantum_part)
        return cls(len(classical_part), len(exps), {exps: coefficient})

    @property
    def terms(self) -> Dict[ExponentPairs, HbarScalar]:
        return dict(self._terms)

    def classical_part(self, exps: ExponentPairs) -> ExponentPairs:
        return exps[: self.n_classical]

    def quantum_part(self, exps: ExponentPairs) -> ExponentPairs:
        return exps[self.n_classical :]

    def _same_shape(self, other: "HybridObservable") -> None:
        if (self.n_classical, self.n_dof) != (other.n_classical, other.n_dof):
            raise ValueError("Observables belong to different signatures")

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HybridObservable):
            return NotImplemented
        return (self.n_classical, self.n_dof, self._terms) == (other.n_classical, other.n_dof, other._terms)

    def __add__(self, other: "HybridObservable") -> "HybridObservable":
        self._same_shape(other)
        terms = dict(self._terms)
        for exps, value in other._terms.items():
            terms[exps] = terms.get(exps, HbarScalar()) + value
        return HybridObservable(self.n_classical, self.n_dof, terms)

    def __neg__(self) -> "HybridObservable":
        return self.scale(-1)

    def __sub__(self, other: "HybridObservable") -> "HybridObservable":
        return self + (-other)

    def scale(self, factor) -> "HybridObservable":
        return HybridObservable(self.n_classical, self.n_dof, {e: v * factor for e, v in self._terms.items()})

    def render(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({value.render()})*{list(exps)}" for exps, value in sorted(self._terms.items()))

    def __repr__(self) -> str:
        return f"HybridObservable({self.n_classical}, {self.n_dof}, '{self.render()}')"


def _add_exponents(left: ExponentPairs, right: ExponentPairs) -> ExponentPairs:
    return tuple((a + m, b + n) for (a, b), (m, n) in zip(left, right))


@lru_cache(maxsize=None)
def weyl_commutator_over_i_hbar(left: ExponentPairs, right: ExponentPairs) -> Tuple[Tuple[ExponentPairs, HbarScalar], ...]:
    """[W(left), W(right)] / (iħ) in the Weyl basis, computed by CCR rewriting."""
    wl = weyl_normal_form(left)
    wr = weyl_normal_form(right)
    forward = multiply_normal_forms(wl, wr)
    backward = multiply_normal_forms(wr, wl)
    difference: Dict[ExponentPairs, HbarScalar] = dict(forward)
    for exps, value in backward.items():
        difference[exps] = difference.get(exps, HbarScalar()) - value
    weyl = normal_form_to_weyl({exps: value for exps, value in difference.items() if value})
    return tuple((exps, value.divide_by_i_hbar()) for exps, value in weyl.items())


def r_map(left: HybridObservable, right: HybridObservable) -> HybridObservable:
    """Symmetric bilinear product adding Weyl exponents: R(W(F), W(G)) = W(F + G)."""
    left._same_shape(right)
    if left.n_classical:
        raise ValueError("R acts on quantum observables only")
    terms: Dict[ExponentPairs, HbarScalar] = {}
    for e1, v1 in left.terms.items():
        for e2, v2 in right.terms.items():
            key = _add_exponents(e1, e2)
            terms[key] = terms.get(key, HbarScalar()) + v1 * v2
    return HybridObservable(0, left.n_dof, terms)


def observable_bracket(left: HybridObservable, right: HybridObservable) -> HybridObservable:
    """[[f F, g G]] = {f, g}_c R(F, G) + f g [F, G] / (iħ), extended bilinearly."""
    left._same_shape(right)
    n_c = left.n_classical
    terms: Dict[ExponentPairs, HbarScalar] = {}

    def add(exps: ExponentPairs, value: HbarScalar) -> None:
        terms[exps] = terms.get(exps, HbarScalar()) + value

    for e1, v1 in left.terms.items():
        for e2, v2 in right.terms.items():
            weight = v1 * v2
            f1, f2 = e1[:n_c], e2[:n_c]
            quantum_sum = _add_exponents(e1[n_c:], e2[n_c:])
            classical_sum = _add_exponents(f1, f2)
            for j, ((a1, b1), (a2, b2)) in enumerate(zip(f1, f2)):
                coefficient = a1 * b2 - b1 * a2
                if not coefficient:
                    continue
                a, b = classical_sum[j]
                reduced = classical_sum[:j] + ((a - 1, b - 1),) + classical_sum[j + 1 :]
                add(reduced + quantum_sum, weight * coefficient)
            if n_c < left.n_dof:
                for exps, value in weyl_commutator_over_i_hbar(e1[n_c:], e2[n_c:]):
                    add(classical_sum + exps, weight * value)
    return HybridObservable(n_c, left.n_dof, terms)
