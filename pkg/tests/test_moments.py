import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import moment_keys

from hybridmoments.errors import KeyFormatError
from hybridmoments.moments import (
    CentroidSymbol,
    MomentKey,
    Sector,
    SystemSignature,
    composition_count,
    enumerate_moments,
    format_key,
    is_pure_sector,
    moment_order,
    parse_centroid,
    parse_key,
    parse_symbol,
)


@pytest.mark.parametrize(
    "key, expected",
    [
        (MomentKey.of((2, 1)), 3),
        (MomentKey.of((0, 0)), 0),
        (MomentKey.of((1, 1), (2, 1)), 5),
    ],
)
def test_moment_order(key, expected):
    assert moment_order(key) == expected


@pytest.mark.parametrize(
    "sig, min_order, max_order, count",
    [
        (SystemSignature(0, 1), 2, 2, 3),
        (SystemSignature(1, 1), 2, 2, 10),
        (SystemSignature(0, 1), 2, 3, 7),
    ],
)
def test_enumerate_counts(sig, min_order, max_order, count):
    assert len(enumerate_moments(sig, min_order, max_order)) == count


def test_enumerate_order_is_graded_colexicographic():
    keys = enumerate_moments(SystemSignature(0, 1), 2, 3)
    assert [key.render() for key in keys] == [
        "d[2,0]",
        "d[1,1]",
        "d[0,2]",
        "d[3,0]",
        "d[2,1]",
        "d[1,2]",
        "d[0,3]",
    ]


def test_enumerate_rejects_low_orders():
    with pytest.raises(ValueError):
        enumerate_moments(SystemSignature(0, 1), 1, 3)


@given(st.data())
def test_enumeration_is_complete(data):
    n_dof = data.draw(st.integers(1, 3))
    order = data.draw(st.integers(2, 6 if n_dof < 3 else 4))
    keys = enumerate_moments(SystemSignature(0, n_dof), order, order)
    assert len(keys) == composition_count(order, 2 * n_dof)
    assert len(set(keys)) == len(keys)
    assert data.draw(moment_keys(n_dof, order, order)) in keys


@given(moment_keys(2), moment_keys(2))
def test_key_ordering_is_consistent_with_equality(a, b):
    if a == b:
        assert hash(a) == hash(b)
        assert not a < b and not b < a
    else:
        assert (a < b) != (b < a)


@pytest.mark.parametrize(
    "key, sector",
    [
        (MomentKey.of((2, 0), (0, 0)), Sector.CLASSICAL),
        (MomentKey.of((0, 0), (1, 1)), Sector.QUANTUM),
        (MomentKey.of((1, 0), (1, 0)), Sector.MIXED),
        (MomentKey.of((0, 0), (0, 0)), Sector.CLASSICAL),
    ],
)
def test_is_pure_sector(key, sector):
    assert is_pure_sector(key, SystemSignature(1, 1)) is sector


@given(moment_keys(3, 5))
def test_key_strings_parse_back(key):
    assert parse_key(format_key(key)) == key


def test_key_format():
    assert format_key(MomentKey.of((2, 1), (0, 3))) == "d[2,1;0,3]"


@pytest.mark.parametrize(
    "text, position",
    [
        ("x[1,1]", 0),
        ("d[1,1", 5),
        ("d[1,a]", 4),
        ("d[1;2]", 2),
        ("d[²,0]", 2),
        ("d[1,٣]", 4),
    ],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(KeyFormatError) as info:
        parse_key(text)
    assert info.value.position == position


def test_parse_key_checks_dof_count():
    with pytest.raises(KeyFormatError):
        parse_key("d[1,1]", n_dof=2)


def test_parse_symbol():
    assert parse_symbol("q2", 2) == CentroidSymbol.position(2)
    assert parse_symbol("d[0,2]") == MomentKey.of((0, 2))
    with pytest.raises(KeyFormatError):
        parse_centroid("q3", 2)
    with pytest.raises(KeyFormatError):
        parse_centroid("q²")


def test_signature_parse_and_validation():
    sig = SystemSignature.parse("1c2q", hbar=0.5)
    assert (sig.n_classical, sig.n_quantum, sig.n_dof, sig.hbar) == (1, 2, 3, 0.5)
    assert sig.label == "1c2q"
    with pytest.raises(ValueError):
        SystemSignature(0, 0)
    with pytest.raises(ValueError):
        SystemSignature(0, 1, hbar=-1.0)
    with pytest.raises(ValueError):
        SystemSignature.parse("two")
