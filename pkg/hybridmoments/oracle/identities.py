"""Closed reordering identities checked against brute-force CCR rewriting."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple

from ..brackets.coefficients import k_coefficient
from ..errors import CostGuardError
from .operators import normal_order_letters, normal_product_1d, weyl_normal_1d
from .report import CheckResult, VerificationReport
from .scalars import HbarScalar

logger = logging.getLogger(__name__)

MAX_IDENTITY_EXPONENT = 6

Pair = Tuple[int, int]
Form1D = Dict[Pair, HbarScalar]


def half_i_hbar_power(k: int, sign: int = 1) -> HbarScalar:
    """(sign · iħ/2)^k."""
    return HbarScalar.of(Fraction(sign**k, 2**k), hbar_power=k, i_power=k)


def i_hbar_power(k: int) -> HbarScalar:
    return HbarScalar.of(1, hbar_power=k, i_power=k)


def _accumulate(target: Form1D, source: Iterable[Tuple[Pair, HbarScalar]], factor: HbarScalar) -> None:
    for exps, value in source:
        target[exps] = target.get(exps, HbarScalar()) + factor * value


def _clean(form: Mapping[Pair, HbarScalar]) -> Form1D:
    return {exps: value for exps, value in form.items() if value}


def _normal(a: int, b: int) -> Tuple[Tuple[Pair, HbarScalar], ...]:
    return normal_order_letters("q" * a + "p" * b)


def _anti_normal(a: int, b: int) -> Tuple[Tuple[Pair, HbarScalar], ...]:
    return normal_order_letters("p" * b + "q" * a)


def _pairing(m: int, n: int, k: int) -> int:
    return factorial(k) * comb(n, k) * comb(m, k)


def _weyl_from_normal(m: int, n: int) -> Tuple[Form1D, Form1D]:
    lhs = _clean(dict(weyl_normal_1d(m, n)))
    rhs: Form1D = {}
    for k in range(min(m, n) + 1):
        _accumulate(rhs, _normal(m - k, n - k), half_i_hbar_power(k, -1) * _pairing(m, n, k))
    return lhs, _clean(rhs)


def _weyl_from_anti_normal(m: int, n: int) -> Tuple[Form1D, Form1D]:
    lhs = _clean(dict(weyl_normal_1d(m, n)))
    rhs: Form1D = {}
    for k in range(min(m, n) + 1):
        _accumulate(rhs, _anti_normal(m - k, n - k), half_i_hbar_power(k) * _pairing(m, n, k))
    return lhs, _clean(rhs)


def _anti_normal_to_weyl(m: int, n: int) -> Tuple[Form1D, Form1D]:
    lhs = _clean(dict(_anti_normal(m, n)))
    rhs: Form1D = {}
    for k in range(min(m, n) + 1):
        _accumulate(rhs, weyl_normal_1d(m - k, n - k), half_i_hbar_power(k, -1) * _pairing(m, n, k))
    return lhs, _clean(rhs)


def _normal_to_weyl(m: int, n: int) -> Tuple[Form1D, Form1D]:
    lhs = _clean(dict(_normal(m, n)))
    rhs: Form1D = {}
    for k in range(min(m, n) + 1):
        _accumulate(rhs, weyl_normal_1d(m - k, n - k), half_i_hbar_power(k) * _pairing(m, n, k))
    return lhs, _clean(rhs)


def _power_commutator(m: int, n: int) -> Tuple[Form1D, Form1D]:
    lhs: Form1D = {}
    _accumulate(lhs, _normal(m, n), HbarScalar.of(1))
    _accumulate(lhs, _anti_normal(m, n), HbarScalar.of(-1))
    rhs: Form1D = {}
    for k in range(1, min(m, n) + 1):
        _accumulate(rhs, _anti_normal(m - k, n - k), i_hbar_power(k) * _pairing(m, n, k))
    return _clean(lhs), _clean(rhs)


def _weyl_product(m: int, n: int, s: int, r: int, odd_only: bool = False) -> Form1D:
    out: Form1D = {}
    for alpha in range(min(m + s, n + r) + 1):
        if odd_only and alpha % 2 == 0:
            continue
        weight = k_coefficient(m, n, s, r, alpha)
        if weight:
            factor = half_i_hbar_power(alpha) * (weight * (2 if odd_only else 1))
            _accumulate(out, weyl_normal_1d(m + s - alpha, n + r - alpha), factor)
    return _clean(out)


def _brute_weyl_product(m: int, n: int, s: int, r: int) -> Form1D:
    out: Form1D = {}
    for (a1, b1), v1 in weyl_normal_1d(m, n):
        for (a2, b2), v2 in weyl_normal_1d(s, r):
            _accumulate(out, normal_product_1d(a1, b1, a2, b2), v1 * v2)
    return _clean(out)


def _weyl_product_identity(m: int, n: int, s: int, r: int) -> Tuple[Form1D, Form1D]:
    return _brute_weyl_product(m, n, s, r), _weyl_product(m, n, s, r)


def _weyl_commutator_identity(m: int, n: int, s: int, r: int) -> Tuple[Form1D, Form1D]:
    lhs = dict(_brute_weyl_product(m, n, s, r))
    _accumulate(lhs, _brute_weyl_product(s, r, m, n).items(), HbarScalar.of(-1))
    return _clean(lhs), _weyl_product(m, n, s, r, odd_only=True)


def render_form(form: Mapping[Pair, HbarScalar]) -> str:
    if not form:
        return "0"
    return " + ".join(f"({value.render()})*q^{a}p^{b}" for (a, b), value in sorted(form.items()))


PAIR_IDENTITIES: Dict[str, Callable[[int, int], Tuple[Form1D, Form1D]]] = {
    "weyl_as_normal_ordered": _weyl_from_normal,
    "weyl_as_anti_normal_ordered": _weyl_from_anti_normal,
    "anti_normal_in_weyl_basis": _anti_normal_to_weyl,
    "normal_in_weyl_basis": _normal_to_weyl,
    "power_commutator": _power_commutator,
}

QUAD_IDENTITIES: Dict[str, Callable[[int, int, int, int], Tuple[Form1D, Form1D]]] = {
    "weyl_product": _weyl_product_identity,
    "weyl_commutator": _weyl_commutator_identity,
}


def _run(name: str, identity: Callable[..., Tuple[Form1D, Form1D]], cases: Iterable[Tuple[int, ...]]) -> CheckResult:
    checked = 0
    for case in cases:
        checked += 1
        lhs, rhs = identity(*case)
        if lhs != rhs:
            detail = f"exponents {case}: brute force {render_form(lhs)} != closed form {render_form(rhs)}"
            logger.warning("Identity %s failed at %s", name, case)
            return CheckResult(name, False, checked, detail)
    return CheckResult(name, True, checked)


def verify_reordering_identities(max_exponent: int, only: Optional[Iterable[str]] = None) -> VerificationReport:
    """Check the closed normal/Weyl conversions, Weyl products and commutators for exponents up to ``max_exponent``."""
    if max_exponent > MAX_IDENTITY_EXPONENT:
        raise CostGuardError(f"Identity checks are limited to exponents up to {MAX_IDENTITY_EXPONENT}")
    if max_exponent < 0:
        raise ValueError("max_exponent must be nonnegative")
    selected = set(only) if only is not None else None
    values = range(max_exponent + 1)
    report = VerificationReport("reordering identities")
    for name, identity in PAIR_IDENTITIES.items():
        if selected is None or name in selected:
            report.add(_run(name, identity, product(values, repeat=2)))
    for name, identity in QUAD_IDENTITIES.items():
        if selected is None or name in selected:
            report.add(_run(name, identity, product(values, repeat=4)))
    return report
