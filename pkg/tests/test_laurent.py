from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinchar.laurent import (
    HalfInt,
    LaurentPoly,
    Monomial,
    NonExactDivisionError,
    RankMismatchError,
    SubstitutionError,
)


def z(i, rank=2, half=False):
    return LaurentPoly.z_var(rank, i, half=half)


def t(rank=2):
    return LaurentPoly.t_var(rank)


def test_halfint_basics():
    assert HalfInt.of(3).twice == 6
    assert HalfInt.of(Fraction(11, 2)).twice == 11
    assert str(HalfInt(11)) == "11/2"
    assert str(HalfInt(-4)) == "-2"
    assert HalfInt(3) + HalfInt(1) == HalfInt(4)
    assert not HalfInt(3).is_integer
    with pytest.raises(ValueError):
        HalfInt.of(Fraction(1, 3))


def test_add_cancellation_and_identity():
    p = z(1) + LaurentPoly.one(2)
    assert p + LaurentPoly.const(-1, 2) == z(1)
    assert p + LaurentPoly.zero(2) == p
    one_t = LaurentPoly.one(2) + t()
    assert one_t + one_t == 2 * LaurentPoly.one(2) + 2 * t()


def test_mul_examples():
    half = z(1, half=True)
    assert half * half == z(1)
    a = LaurentPoly.one(1) + LaurentPoly.t_var(1) * LaurentPoly.z_var(1, 1)
    b = LaurentPoly.one(1) + LaurentPoly.t_var(1) * LaurentPoly.z_var(1, 1).inverse_monomial()
    prod = a * b
    expected = LaurentPoly.parse(
        "1 * z1 t + 1 * t^{2} + 1 + 1 * z1^{-1} t", 1
    )
    assert prod == expected
    assert a * LaurentPoly.zero(1) == LaurentPoly.zero(1)


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        LaurentPoly.one(1) + LaurentPoly.one(2)


def test_div_exact_geometric():
    num = LaurentPoly.z_var(1, 1) - LaurentPoly.z_var(1, 1).inverse_monomial()
    den = LaurentPoly.z_var(1, 1, half=True) - LaurentPoly.z_var(
        1, 1, half=True
    ).inverse_monomial()
    q = num.div_exact(den)
    assert q == LaurentPoly.parse("1 * z1^{1/2} + 1 * z1^{-1/2}", 1)


def test_div_exact_error_carries_remainder():
    a = LaurentPoly.z_var(1, 1) + LaurentPoly.one(1)
    b = LaurentPoly.z_var(1, 1) - LaurentPoly.one(1)
    with pytest.raises(NonExactDivisionError) as err:
        a.div_exact(b)
    assert err.value.remainder is not None
    assert err.value.remainder != LaurentPoly.zero(1)


def test_substitute_examples():
    one_plus_t = LaurentPoly.one(1) + LaurentPoly.t_var(1)
    minus_qinv = LaurentPoly.monomial(1, qexp=-1, coef=-1)
    out = one_plus_t.substitute({"t": minus_qinv})
    assert out == LaurentPoly.parse("1 + -1 * q^{-1}", 1)
    tmax = LaurentPoly.monomial(1, texp=3)
    assert tmax.substitute({"t": 0}) == LaurentPoly.zero(1)
    qhalf = LaurentPoly.q_var(1, half=True)
    assert qhalf.substitute({"q": 9}) == LaurentPoly.const(3, 1)
    with pytest.raises(SubstitutionError):
        qhalf.substitute({"q": 3})


def test_coefficient_of_examples():
    p = z(1) * t() + z(2)
    assert p.coefficient_of({"z1": 1}) == t()
    assert LaurentPoly.zero(2).coefficient_of({"z1": 1}) == LaurentPoly.zero(2)


def test_serialize_deterministic():
    p = z(1) * t() + z(2) - LaurentPoly.const(3, 2)
    assert str(p) == str(LaurentPoly.parse(str(p), 2))
    assert str(LaurentPoly.zero(2)) == "0"
    assert LaurentPoly.parse("0", 2) == LaurentPoly.zero(2)


# -- property tests ------------------------------------------------------


def monomials(rank):
    return st.builds(
        Monomial,
        st.tuples(*(st.integers(-6, 6) for _ in range(rank))),
        st.integers(0, 4),
        st.integers(-6, 6),
    )


def polys(rank=2):
    return st.dictionaries(monomials(rank), st.integers(-9, 9), max_size=12).map(
        lambda d: LaurentPoly(d, rank)
    )


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_mul_then_div_round_trip(a, b):
    if not b:
        return
    assert (a * b).div_exact(b) == a


@given(polys())
@settings(max_examples=60, deadline=None)
def test_serialize_parse_round_trip(p):
    assert LaurentPoly.parse(str(p), p.rank) == p


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_substitute_is_homomorphism(a, b):
    minus_qinv = LaurentPoly.monomial(2, qexp=-1, coef=-1)
    bindings = {"t": minus_qinv, "z1": LaurentPoly.z_var(2, 1).inverse_monomial()}
    lhs = (a * b).substitute(bindings)
    rhs = a.substitute(bindings) * b.substitute(bindings)
    assert lhs == rhs
    assert (a + b).substitute(bindings) == a.substitute(bindings) + b.substitute(
        bindings
    )


_POINT = {
    "z1": Fraction(4, 9),
    "z2": Fraction(1, 4),
    "t": Fraction(2),
    "q": Fraction(9, 4),
}


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_evaluate_is_a_ring_map(a, b):
    # square rational values so half-integer exponents evaluate exactly
    assert (a + b).evaluate(_POINT) == a.evaluate(_POINT) + b.evaluate(_POINT)
    assert (a * b).evaluate(_POINT) == a.evaluate(_POINT) * b.evaluate(_POINT)
