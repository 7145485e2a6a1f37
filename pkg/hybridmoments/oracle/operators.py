"""Word algebra of canonical operators.

Words are sequences of letters ``(dof_index, VariableKind)``. The only
rewrite ever applied is the canonical commutation relation ``p q -> q p - iħ``
on adjacent letters of one degree of freedom. Weyl monomials are averages
over all distinct letter permutations, tensored across degrees of freedom.
Nothing here uses the closed reordering identities: those are checked
against this module in :mod:`hybridmoments.oracle.identities`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from ..moments.types import VariableKind
from .scalars import I_HBAR, ONE, HbarScalar

Letter = Tuple[int, VariableKind]
Word = Tuple[Letter, ...]
ExponentPairs = Tuple[Tuple[int, int], ...]
# Normal-ordered monomial basis: per-dof exponents of q^a p^b -> coefficient.
NormalForm = Dict[ExponentPairs, HbarScalar]
Basis1D = Tuple[Tuple[Tuple[int, int], HbarScalar], ...]

_LETTER = {VariableKind.POSITION: "q", VariableKind.MOMENTUM: "p"}


def _canonical_word(word: Iterable[Letter]) -> Word:
    # letters of different dofs commute; sorted() is stable within a dof
    return tuple(sorted(word, key=lambda letter: letter[0]))


class OperatorExpression:
    """Linear combination of words with coefficients in Q[i, ħ]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Sequence[Letter], HbarScalar]] = None) -> None:
        clean: Dict[Word, HbarScalar] = {}
        if terms:
            for word, value in terms.items():
                key = _canonical_word(word)
                clean[key] = clean.get(key, HbarScalar()) + value
        self._terms = {word: value for word, value in clean.items() if value}

    @classmethod
    def word(cls, letters: Iterable[Letter], coefficient: HbarScalar = ONE) -> "OperatorExpression":
        return cls({tuple(letters): coefficient})

    @classmethod
    def parse(cls, text: str, dof_index: int = 1) -> "OperatorExpression":
        """Single-dof word from a string such as ``"pqq"``."""
        letters = []
        for char in text:
            if char not in ("q", "p"):
                raise ValueError(f"Unknown operator letter '{char}'")
            letters.append((dof_index, VariableKind(char)))
        return cls.word(letters)

    @classmethod
    def identity(cls) -> "OperatorExpression":
        return cls({(): ONE})

    @classmethod
    def from_normal_form(cls, form: Mapping[ExponentPairs, HbarScalar]) -> "OperatorExpression":
        return cls({normal_word(exps): value for exps, value in form.items()})

    @property
    def terms(self) -> Dict[Word, HbarScalar]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorExpression):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "OperatorExpression") -> "OperatorExpression":
        terms = dict(self._terms)
        for word, value in other._terms.items():
            terms[word] = terms.get(word, HbarScalar()) + value
        return OperatorExpression(terms)

    def __neg__(self) -> "OperatorExpression":
        return OperatorExpression({word: -value for word, value in self._terms.items()})

    def __sub__(self, other: "OperatorExpression") -> "OperatorExpression":
        return self + (-other)

    def __mul__(self, other: Union["OperatorExpression", HbarScalar, int, Fraction]) -> "OperatorExpression":
        if not isinstance(other, OperatorExpression):
            return self.scale(other)
        terms: Dict[Word, HbarScalar] = {}
        for w1, v1 in self._terms.items():
            for w2, v2 in other._terms.items():
                word = _canonical_word(w1 + w2)
                terms[word] = terms.get(word, HbarScalar()) + v1 * v2
        return OperatorExpression(terms)

    def scale(self, factor: Union[HbarScalar, int, Fraction]) -> "OperatorExpression":
        return OperatorExpression({word: value * factor for word, value in self._terms.items()})

    @property
    def max_dof(self) -> int:
        return max((letter[0] for word in self._terms for letter in word), default=0)

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, value in sorted(self._terms.items(), key=lambda item: (-len(item[0]), _render_word(item[0]))):
            name = _render_word(word)
            parts.append(f"({value.render()})*{name}" if name else f"({value.render()})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"OperatorExpression('{self.render()}')"


def _render_word(word: Word) -> str:
    return " ".join(f"{_LETTER[kind]}{dof}" for dof, kind in word)


def normal_word(exps: ExponentPairs) -> Word:
    letters = []
    for dof, (a, b) in enumerate(exps, start=1):
        letters.extend([(dof, VariableKind.POSITION)] * a)
        letters.extend([(dof, VariableKind.MOMENTUM)] * b)
    return tuple(letters)


@lru_cache(maxsize=None)
def normal_order_letters(word: str) -> Basis1D:
    """Normal order a single-dof word over {'q', 'p'} by repeated CCR rewrites."""
    index = word.find("pq")
    if index < 0:
        a = word.count("q")
        return (((a, len(word) - a), ONE),)
    swapped = word[:index] + "qp" + word[index + 2 :]
    contracted = word[:index] + word[index + 2 :]
    acc: Dict[Tuple[int, int], HbarScalar] = {}
    for exps, value in normal_order_letters(swapped):
        acc[exps] = acc.get(exps, HbarScalar()) + value
    for exps, value in normal_order_letters(contracted):
        acc[exps] = acc.get(exps, HbarScalar()) - I_HBAR * value
    return tuple((exps, value) for exps, value in acc.items() if value)


def _tensor(factors: Sequence[Basis1D]) -> NormalForm:
    form: NormalForm = {(): ONE}
    for basis in factors:
        grown: NormalForm = {}
        for exps, value in form.items():
            for pair, factor in basis:
                key = exps + (pair,)
                grown[key] = grown.get(key, HbarScalar()) + value * factor
        form = grown
    return {exps: value for exps, value in form.items() if value}


def normal_form_of_word(word: Word, n_dof: int) -> NormalForm:
    strings = [""] * n_dof
    for dof, kind in word:
        strings[dof - 1] += _LETTER[kind]
    return _tensor([normal_order_letters(text) for text in strings])


def normal_form(expr: OperatorExpression, n_dof: Optional[int] = None) -> NormalForm:
    n_dof = n_dof or max(expr.max_dof, 1)
    form: NormalForm = {}
    for word, value in expr.terms.items():
        for exps, factor in normal_form_of_word(word, n_dof).items():
            form[exps] = form.get(exps, HbarScalar()) + value * factor
    return {exps: value for exps, value in form.items() if value}


def normal_order(expr: OperatorExpression) -> OperatorExpression:
    """Per dof, every position letter before every momentum letter."""
    return OperatorExpression.from_normal_form(normal_form(expr))


def commutator(left: OperatorExpression, right: OperatorExpression) -> OperatorExpression:
    return normal_order(left * right - right * left)


@lru_cache(maxsize=None)
def weyl_normal_1d(a: int, b: int) -> Basis1D:
    """(q^a p^b)_Weyl in the normal-ordered basis of one degree of freedom."""
    total = a + b
    acc: Dict[Tuple[int, int], HbarScalar] = {}
    for positions in combinations(range(total), a):
        chosen = set(positions)
        word = "".join("q" if index in chosen else "p" for index in range(total))
        for exps, value in normal_order_letters(word):
            acc[exps] = acc.get(exps, HbarScalar()) + value
    weight = Fraction(1, comb(total, a))
    return tuple((exps, value * weight) for exps, value in acc.items() if value)


def weyl_normal_form(exps: ExponentPairs) -> NormalForm:
    return _tensor([weyl_normal_1d(a, b) for a, b in exps])


def weyl_monomial(exps: Iterable[Tuple[int, int]]) -> OperatorExpression:
    """Totally symmetric product of q^a p^b per dof, normal ordered."""
    return OperatorExpression.from_normal_form(weyl_normal_form(tuple(tuple(pair) for pair in exps)))


@lru_cache(maxsize=None)
def normal_to_weyl_1d(a: int, b: int) -> Basis1D:
    """Expand q^a p^b in Weyl monomials via W(a,b) = N(a,b) + lower-degree terms."""
    acc: Dict[Tuple[int, int], HbarScalar] = {(a, b): ONE}
    for exps, value in weyl_normal_1d(a, b):
        if exps == (a, b):
            continue
        for inner, factor in normal_to_weyl_1d(*exps):
            acc[inner] = acc.get(inner, HbarScalar()) - value * factor
    return tuple((exps, value) for exps, value in acc.items() if value)


def normal_form_to_weyl(form: Mapping[ExponentPairs, HbarScalar]) -> NormalForm:
    """Re-express a normal-ordered combination in the Weyl monomial basis."""
    out: NormalForm = {}
    for exps, value in form.items():
        for weyl_exps, factor in _tensor([normal_to_weyl_1d(a, b) for a, b in exps]).items():
            out[weyl_exps] = out.get(weyl_exps, HbarScalar()) + value * factor
    return {exps: value for exps, value in out.items() if value}


@lru_cache(maxsize=None)
def normal_product_1d(a1: int, b1: int, a2: int, b2: int) -> Basis1D:
    return normal_order_letters("q" * a1 + "p" * b1 + "q" * a2 + "p" * b2)


def multiply_normal_forms(left: Mapping[ExponentPairs, HbarScalar], right: Mapping[ExponentPairs, HbarScalar]) -> NormalForm:
    out: NormalForm = {}
    for e1, v1 in left.items():
        for e2, v2 in right.items():
            factors = [normal_product_1d(a1, b1, a2, b2) for (a1, b1), (a2, b2) in zip(e1, e2)]
            product = v1 * v2
            for exps, value in _tensor(factors).items():
                out[exps] = out.get(exps, HbarScalar()) + product * value
    return {exps: value for exps, value in out.items() if value}
