import pytest
from hypothesis import given, strategies as hst

from clockoid.laurent import LaurentPoly

L = LaurentPoly


def poly_strategy():
    return hst.dictionaries(
        hst.integers(min_value=-4, max_value=4),
        hst.integers(min_value=-9, max_value=9),
        max_size=5,
    ).map(LaurentPoly)


def test_parse_monomials():
    assert L.parse_monomial("1") == L.one()
    assert L.parse_monomial("-1") == L.monomial(-1, 0)
    assert L.parse_monomial("W") == L.var()
    assert L.parse_monomial("-W") == L.monomial(-1, 1)
    assert L.parse_monomial("W^-1") == L.monomial(1, -1)
    assert L.parse_monomial("3W^2") == L.monomial(3, 2)
    assert L.parse_monomial("0") == L.zero()
    with pytest.raises(ValueError):
        L.parse_monomial("spam")


def test_parse_polynomial_round_trip():
    for text in ("W^2 + W - W^-1", "1", "0", "-W + W^-1 + W^-2", "2W^3 - 5"):
        assert str(L.parse(text)) == text


def test_canonical_formatting():
    p = L.var() + L.var() ** 2 - L.monomial(1, -1)
    assert str(p) == "W^2 + W - W^-1"
    assert str(L.zero()) == "0"
    assert str(L.monomial(-1, 0)) == "-1"
    assert str(L.monomial(1, -3) * L.monomial(2, 0)) == "2W^-3"


def test_integer_coercion():
    assert L.var() * 1 == L.var()
    assert 0 + L.var() == L.var()
    assert 2 - L.var() == L.parse("2 - W")


@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * L.one() == a
    assert a + L.zero() == a
    assert a - a == L.zero()


@given(poly_strategy())
def test_hash_consistent_with_eq(a):
    b = LaurentPoly({e: c for e, c in a.items()})
    assert a == b and hash(a) == hash(b)


def test_power():
    w = L.var()
    assert w ** 0 == L.one()
    assert w ** 3 == L.monomial(1, 3)
    assert (w + 1) ** 2 == L.parse("W^2 + 2W + 1")
    with pytest.raises(ValueError):
        (w + 1) ** -1
