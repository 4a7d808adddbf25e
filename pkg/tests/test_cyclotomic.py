from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rspin.cyclotomic import (ConductorMismatchError, CycQ, as_cycq, cyclotomic_polynomial,
                              root_of_unity, totient)

X = sympy.Symbol("X")
CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15]

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def elements(draw, r=None):
    r = draw(st.sampled_from(CONDUCTORS)) if r is None else r
    coeffs = draw(st.lists(rationals, min_size=1, max_size=totient(r) + 2))
    return CycQ(r, coeffs)


@st.composite
def pairs(draw):
    r = draw(st.sampled_from(CONDUCTORS))
    return draw(elements(r)), draw(elements(r))


def to_sympy(a: CycQ):
    return sum(sympy.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(a.coeffs))


def sympy_reduce(expr, r):
    rem = sympy.rem(sympy.expand(expr), sympy.cyclotomic_poly(r, X), X)
    p = sympy.Poly(rem, X)
    out = [Fraction(0)] * totient(r)
    for (k,), c in p.terms():
        out[k] = Fraction(int(c.p), int(c.q))
    return tuple(out)


@pytest.mark.parametrize("r", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(r):
    want = sympy.Poly(sympy.cyclotomic_poly(r, X), X).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(r)) == [int(c) for c in want]


@settings(max_examples=150, deadline=None)
@given(pairs())
def test_multiplication_matches_sympy(ab):
    a, b = ab
    assert (a * b).coeffs == sympy_reduce(to_sympy(a) * to_sympy(b), a.r)


@settings(max_examples=150, deadline=None)
@given(pairs())
def test_addition_matches_sympy(ab):
    a, b = ab
    assert (a + b).coeffs == sympy_reduce(to_sympy(a) + to_sympy(b), a.r)
    assert (a - b).coeffs == sympy_reduce(to_sympy(a) - to_sympy(b), a.r)


@settings(max_examples=100, deadline=None)
@given(elements())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inv()
    else:
        assert a * a.inv() == CycQ.one(a.r)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(CONDUCTORS).flatmap(lambda r: st.tuples(elements(r), elements(r), elements(r))))
def test_field_axioms(abc):
    a, b, c = abc
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a.fma(b, c) == a + b * c


@pytest.mark.parametrize("r", CONDUCTORS)
def test_root_of_unity_order(r):
    z = root_of_unity(r, 1)
    assert z ** r == CycQ.one(r)
    for k in range(1, r):
        assert z ** k != CycQ.one(r)
    assert sum((root_of_unity(r, k) for k in range(r)), CycQ.zero(r)) == (1 if r == 1 else 0)


def test_examples():
    z = root_of_unity(4, 1)
    assert (1 + z) * (1 - z) == 2
    z3 = root_of_unity(3, 1)
    assert 1 + z3 + z3 ** 2 == 0
    assert z3 ** -1 == z3 ** 2
    assert str(CycQ.parse("1/2 + z - 3*z^2", 5)) == "1/2 + z - 3*z^2"


@settings(max_examples=100, deadline=None)
@given(elements())
def test_text_and_json_round_trip(a):
    assert CycQ.parse(str(a), a.r) == a
    assert CycQ.from_json(a.to_json()) == a


@settings(max_examples=60, deadline=None)
@given(elements())
def test_approx_is_a_ring_map(a):
    b = a * a
    assert abs(b.approx(1) - a.approx(1) ** 2) < 1e-6 * (1 + abs(b.approx(1)))


def test_approx_rejects_non_coprime_embedding():
    with pytest.raises(ValueError):
        root_of_unity(6, 1).approx(2)


def test_lift_is_compatible():
    z3 = root_of_unity(3, 1)
    assert z3.lift(9) == root_of_unity(9, 3)
    assert (z3 * z3).lift(12) == z3.lift(12) * z3.lift(12)
    with pytest.raises(ConductorMismatchError):
        z3.lift(4)


def test_conductor_mismatch():
    with pytest.raises(ConductorMismatchError):
        root_of_unity(3, 1) + root_of_unity(4, 1)
    # rationals mix freely
    assert CycQ.from_rational(3, 2) == CycQ.from_rational(4, 2)
    assert as_cycq(Fraction(1, 2), 6) * 2 == 1
