import pytest
from hypothesis import given
from hypothesis import strategies as st

from annulink.poly import (
    CoefficientOverflow,
    SkeinPolynomial,
    coefficient_bound,
    loop_factor,
    set_coefficient_bound,
)
from annulink.skein import degree_stats

terms = st.dictionaries(
    st.tuples(st.integers(-12, 12), st.integers(0, 4)),
    st.integers(-50, 50),
    max_size=6,
)
polys = terms.map(SkeinPolynomial)


def test_zero_coefficients_dropped():
    p = SkeinPolynomial({(1, 0): 0, (2, 1): 3})
    assert len(p) == 1
    assert p.coefficient(2, 1) == 3


def test_loop_factor():
    d = loop_factor()
    assert d == SkeinPolynomial({(2, 0): -1, (-2, 0): -1})
    assert degree_stats(d.shift(t=1)) == (2, -2, 4)


def test_text_format():
    p = SkeinPolynomial({(-7, 0): 1, (-3, 0): -1, (5, 0): -1})
    assert p.to_text() == "1*A^-7 + -1*A^-3 + -1*A^5"
    assert SkeinPolynomial.monomial(1, 0, 1).to_text() == "1*t^1"
    assert SkeinPolynomial.one().to_text() == "1"
    assert SkeinPolynomial.zero().to_text() == "0"


def test_text_sorted_by_t_then_a():
    p = SkeinPolynomial({(5, 0): 1, (-3, 2): 1, (1, 2): 1, (-9, 0): 1})
    assert p.to_text() == "1*A^-9 + 1*A^5 + 1*A^-3*t^2 + 1*A^1*t^2"


def test_q_display_uses_exact_rationals():
    assert SkeinPolynomial.monomial(1, -16).to_q_text() == "1*q^4"
    assert SkeinPolynomial.monomial(1, -2).to_q_text() == "1*q^(1/2)"


def test_degree_stats_of_one():
    assert degree_stats(SkeinPolynomial.one()) == (0, 0, 0)


def test_degree_stats_rejects_zero():
    with pytest.raises(ValueError):
        degree_stats(SkeinPolynomial.zero())


def test_negative_power_only_for_units():
    u = SkeinPolynomial.monomial(-1, 3)
    assert u * u ** -1 == SkeinPolynomial.one()
    with pytest.raises(ValueError):
        loop_factor() ** -1


def test_negative_t_rejected():
    with pytest.raises(ValueError):
        SkeinPolynomial({(0, -1): 1})


def test_overflow_detected_not_wrapped():
    big = SkeinPolynomial.monomial(2**62)
    with pytest.raises(CoefficientOverflow):
        big + big
    previous = set_coefficient_bound(None)
    try:
        assert (big + big).coefficient(0) == 2**63
    finally:
        set_coefficient_bound(previous)
    assert coefficient_bound() == 2**63 - 1


@given(polys)
def test_text_round_trip(p):
    assert SkeinPolynomial.parse(p.to_text()) == p


@given(polys)
def test_object_round_trip(p):
    assert SkeinPolynomial.from_object(p.to_object()) == p


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == SkeinPolynomial.zero()


@given(polys)
def test_invert_a_is_involution(p):
    assert p.invert_a().invert_a() == p
