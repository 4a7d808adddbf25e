import random
from fractions import Fraction

import pytest
from conftest import cat
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import recurrence_oracle, trace_form_rank

from rspin.analysis import (distinctness_check, graded_pattern_check, is_semisimple,
                            is_squarefree, minimal_recurrence, span_membership,
                            two_value_check)
from rspin.catalog import divisors
from rspin.cyclotomic import CycQ, root_of_unity
from rspin.frobenius import direct_sum, graded_tensor, permute_basis
from rspin.invariants import beta_via_dimension


def betas(alg):
    return {d: beta_via_dimension(alg, d) for d in divisors(alg.r)}


RATIONAL_ALGEBRAS = [cat("A", 2), cat("A", 4), cat("E", 3, "2"), cat("F", 2), cat("F", 3),
                     direct_sum(cat("A", 2), cat("F", 2)),
                     graded_tensor(cat("A", 2), cat("A", 2)),
                     direct_sum(cat("E", 4, "-1/2"), cat("A", 4))]


@pytest.mark.parametrize("alg", RATIONAL_ALGEBRAS, ids=lambda a: a.label)
def test_trace_form_rank_matches_oracle(alg):
    rep = is_semisimple(alg)
    assert rep.trace_form_rank == trace_form_rank(alg)
    assert rep.radical_dim == rep.total_dim - rep.trace_form_rank
    assert rep.semisimple == (rep.radical_dim == 0)


def test_semisimplicity_examples():
    assert is_semisimple(cat("A", 4)).semisimple
    assert is_semisimple(cat("E", 5, "3")).semisimple
    for alg in (cat("B", 3), cat("B", 7), cat("C", 6), cat("F", 4), cat("D", 9)):
        assert not is_semisimple(alg).semisimple
    # B is local: everything but the unit line is nilpotent
    rep = is_semisimple(cat("B", 5))
    assert rep.radical_dim == cat("B", 5).space.total_dim() - 1


def test_semisimplicity_invariances():
    rng = random.Random(7)
    for alg in (cat("A", 4), cat("C", 4), direct_sum(cat("A", 4), cat("E", 4, "2"))):
        perms = {}
        for a in range(alg.r):
            idx = list(range(alg.dim(a)))
            rng.shuffle(idx)
            perms[a] = idx
        base = is_semisimple(alg)
        assert is_semisimple(permute_basis(alg, perms)).semisimple == base.semisimple
        assert is_semisimple(graded_tensor(alg, cat("E", alg.r, "1"))).semisimple == base.semisimple


def test_two_value_and_pattern():
    assert two_value_check(betas(cat("A", 4)))
    assert two_value_check(betas(cat("E", 6, "2")))
    d9 = cat("D", 9)
    assert not two_value_check(betas(d9)) and not is_semisimple(d9).semisimple
    assert graded_pattern_check(cat("A", 6))
    assert graded_pattern_check(cat("E", 5, "2"))
    b = cat("B", 5)
    assert not graded_pattern_check(b) and not is_semisimple(b).semisimple


def test_distinctness_examples():
    assert distinctness_check(betas(cat("D", 9)))
    assert not distinctness_check(betas(cat("B", 15)))
    for p in (3, 5, 7, 11):
        assert distinctness_check(betas(cat("B", p)))


def test_span_examples():
    k = Fraction(2) ** 3
    rep = span_membership([k ** n for n in range(1, 7)])
    assert (rep.member_verdict, rep.order) == ("consistent", 1)
    assert rep.recurrence_coeffs == [8]
    rep = span_membership([0] * 6)
    assert (rep.member_verdict, rep.order) == ("consistent", 0)
    rep = span_membership([1, 2, 3, 4, 5, 6])
    assert rep.member_verdict == "inconsistent"
    assert rep.reason == "characteristic polynomial not squarefree"
    assert rep.recurrence_coeffs == [2, -1]
    rep = span_membership([1, 0, 0, 0, 0, 0])
    assert rep.member_verdict == "inconsistent"
    with pytest.raises(ValueError):
        span_membership([1])


def test_span_inconclusive_on_short_prefix():
    rep = span_membership([1, 5, 2, 9])
    assert rep.member_verdict in ("consistent", "inconclusive")
    rep = span_membership([1, 2, 7, 3, 11, 5, 8])
    assert rep.member_verdict == "inconclusive"


def test_span_cyclotomic_geometric():
    z = root_of_unity(5, 1)
    seq = [z ** n + (2 * z) ** n for n in range(1, 7)]
    rep = span_membership(seq)
    assert (rep.member_verdict, rep.order) == ("consistent", 2)
    double = [n * z ** n for n in range(1, 7)]
    assert span_membership(double).member_verdict == "inconsistent"


def test_minimal_recurrence_fibonacci():
    fib = [1, 1]
    for _ in range(8):
        fib.append(fib[-1] + fib[-2])
    m, cs = minimal_recurrence([CycQ.from_rational(1, v) for v in fib], 1)
    assert m == 2 and cs == [1, 1]


def test_is_squarefree():
    one = CycQ.one(1)
    assert is_squarefree([-one, 0 * one, one])            # X^2 - 1
    assert not is_squarefree([one, -2 * one, one])        # (X - 1)^2


small = st.sampled_from([-2, -1, 0, 1, 2, Fraction(1, 2)])


@settings(max_examples=150, deadline=None)
@given(st.lists(small, min_size=2, max_size=8))
def test_span_matches_bruteforce_oracle(seq):
    rep = span_membership(seq)
    order, verdict = recurrence_oracle([Fraction(v) for v in seq])
    assert verdict == rep.member_verdict
    if verdict != "inconclusive":
        assert order == rep.order


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(small, st.sampled_from([-1, 1, 2, 3, Fraction(-1, 2)])),
                min_size=1, max_size=3, unique_by=lambda t: t[1]))
def test_power_sums_are_consistent(terms):
    seq = [sum(Fraction(c) * Fraction(lam) ** n for c, lam in terms) for n in range(1, 9)]
    assert span_membership(seq).member_verdict == "consistent"
