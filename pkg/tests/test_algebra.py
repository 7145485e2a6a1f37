from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import centroids, moment_keys, polynomials

from hybridmoments.algebra.polynomial import (
    Polynomial,
    poly_add,
    poly_derivative,
    poly_eval,
    poly_mul,
)
from hybridmoments.errors import MissingSymbolError
from hybridmoments.moments.types import CentroidSymbol, MomentKey

Q = Polynomial.symbol(CentroidSymbol.position(1))
P = Polynomial.symbol(CentroidSymbol.momentum(1))
QQ = MomentKey.of((2, 0))
QP = MomentKey.of((1, 1))
PP = MomentKey.of((0, 2))


def d(key):
    return Polynomial.moment(key)


def test_addition_examples():
    assert poly_add(d(QQ) * 2, d(QQ) * -2) == Polynomial.zero()
    assert poly_add(d(QP), d(QP)) == d(QP) * 2
    assert poly_add(Polynomial.hbar2(), Polynomial.constant(3)).render() == "3 + hb^2"


def test_multiplication_examples():
    assert poly_mul(d(QQ), d(PP)).render() == "d[2,0]*d[0,2]"
    assert poly_mul(Q + P, Q - P) == Q * Q - P * P
    assert poly_mul(Polynomial.zero(), d(QQ) + Q) == Polynomial.zero()


def test_low_order_moments_collapse():
    assert d(MomentKey.of((0, 0))) == Polynomial.constant(1)
    assert d(MomentKey.of((1, 0))) == Polynomial.zero()
    with pytest.raises(ValueError):
        Polynomial.symbol(MomentKey.of((0, 1)))


def test_evaluation_examples():
    assert poly_eval(d(QP) * 4, {QP: 0.5}, hbar=1.0) == 2.0
    assert poly_eval(Polynomial.constant(Fraction(-3, 2), 1), {}, hbar=2.0) == -6.0
    q1 = CentroidSymbol.position(1)
    assert poly_eval(Q * d(QQ), {q1: 3.0, QQ: 0.1}, hbar=0.0) == pytest.approx(0.3)


def test_evaluation_names_missing_symbol():
    with pytest.raises(MissingSymbolError) as info:
        poly_eval(d(QQ) + Q, {QQ: 1.0}, hbar=1.0)
    assert info.value.symbol == "q1"


def test_derivative_examples():
    q1 = CentroidSymbol.position(1)
    assert poly_derivative(Q * Q * P, q1) == Q * P * 2
    assert poly_derivative(d(QQ), q1) == Polynomial.zero()
    omega_sq = Fraction(17, 2)
    assert poly_derivative(Q * d(QP) * omega_sq, q1) == d(QP) * omega_sq


def test_render_is_stable():
    poly = d(QP) * 2 - Polynomial.constant(Fraction(3, 2), 1)
    assert poly.render() == "2*d[1,1] - 3/2*hb^2"
    assert Polynomial.zero().render() == "0"
    names = {CentroidSymbol.position(1): "x"}
    assert (Q * Q).render(names) == "x^2"


def test_truncate_and_drop():
    poly = d(QQ) + Polynomial.hbar2() + d(MomentKey.of((3, 0))) * Q
    assert poly.truncate_hbar() == d(QQ) + d(MomentKey.of((3, 0))) * Q
    dropped = poly.drop_terms_with(lambda s: isinstance(s, MomentKey) and s.order > 2)
    assert dropped == d(QQ) + Polynomial.hbar2()


def test_substitute():
    q1 = CentroidSymbol.position(1)
    assert (Q * Q + P).substitute({q1: P + 1}) == P * P + P * 3 + 1


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero()


@given(st.data())
def test_evaluation_is_a_ring_homomorphism(data):
    a, b, c = (data.draw(polynomials()) for _ in range(3))
    symbols = set((a * b + c).symbols()) | set(a.symbols()) | set(b.symbols()) | set(c.symbols())
    values = {symbol: data.draw(st.floats(-2, 2)) for symbol in symbols}
    hbar = data.draw(st.floats(0, 2))
    expected = a.evaluate(values, hbar) * b.evaluate(values, hbar) + c.evaluate(values, hbar)
    assert (a * b + c).evaluate(values, hbar) == pytest.approx(expected, abs=1e-9, rel=1e-9)


@given(polynomials(), centroids())
def test_derivative_is_linear(a, symbol):
    assert (a + a * 2).derivative(symbol) == a.derivative(symbol) * 3


@given(moment_keys(1, 4, 2))
def test_moment_symbols_are_constants_for_derivatives(key):
    assert d(key).derivative(CentroidSymbol.position(1)) == Polynomial.zero()
