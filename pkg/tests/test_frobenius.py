import random
from fractions import Fraction

import pytest
from conftest import cat

from rspin.cyclotomic import root_of_unity
from rspin.frobenius import (AXIOMS, FrobAlgebra, MalformedAlgebra, direct_sum,
                             from_mu_and_delta_pair, graded_tensor, nakayama_of,
                             permute_basis, pullback, verify)
from rspin.graded import GradedMap, compose


def scaled_counit(alg, c):
    return FrobAlgebra(alg.space, alg.stored_mu(), alg.stored_delta(), alg.eta,
                       alg.eps.scale(c), alg.label + "*")


@pytest.mark.parametrize("alg", [cat("A", 2), cat("A", 4), cat("B", 3), cat("B", 5),
                                 cat("C", 4), cat("E", 3, "2"), cat("F", 1), cat("F", 2),
                                 cat("D", 3), cat("D", 4), cat("D", 6)], ids=lambda a: a.label)
def test_catalog_verifies(alg):
    rep = verify(alg)
    assert rep.passed, rep.lines()
    assert set(rep.results) == set(AXIOMS)
    assert all(res.checks > 0 for res in rep.results.values())


def test_perturbed_counit_fails_with_witness():
    rep = verify(scaled_counit(cat("B", 3), 2))
    assert not rep.passed
    assert "counitality" in rep.failed()
    w = rep.results["counitality"].witness
    assert w["lhs"] != w["rhs"]
    assert set(w) >= {"degrees", "input", "output", "lhs", "rhs"}


def test_perturbed_product_fails_associativity():
    alg = cat("E", 3, "2")
    mu = {k: m.scale(2) if k == (1, 1) else m for k, m in alg.stored_mu().items()}
    bad = FrobAlgebra(alg.space, mu, alg.stored_delta(), alg.eta, alg.eps, "bad")
    assert not verify(bad).passed


def test_nakayama_arf():
    for r in (2, 4, 6):
        alg = cat("A", r)
        for x in range(r):
            n = alg.nakayama(x)
            (k, col), = n.cols.items()
            assert col[k] == (-1) ** ((1 - x) % 2)


def test_nakayama_b_eigenvalues():
    r = 5
    alg = cat("B", r)
    zeta = root_of_unity(r, 1)
    n0 = alg.nakayama(0)
    assert n0.entry((0, 0), (0, 0)) == 1
    for x in range(r):
        key = (0, 1 + x)
        assert n0.entry(key, key) == zeta ** x


@pytest.mark.parametrize("alg", [cat("B", 3), cat("C", 6), cat("D", 6), cat("D", 9)],
                         ids=lambda a: a.label)
def test_nakayama_deck_relations(alg):
    r = alg.r
    for a in range(r):
        ident = GradedMap.identity(alg.word(a), r=r)
        assert alg.nakayama_power(a, a) == ident
        p = ident
        for _ in range(r):
            p = compose(alg.nakayama(a), p)
        assert p == ident


def test_reconstruction_from_pairings_matches():
    alg = cat("C", 4)
    pairs = {a: alg.delta_pair(a) for a in range(alg.r)}
    again = from_mu_and_delta_pair(alg.space, alg.stored_mu(), alg.eta, alg.eps, pairs, "again")
    assert again.stored_delta() == alg.stored_delta()
    assert nakayama_of(again, 0) == alg.nakayama(0)


def test_operations_preserve_axioms():
    x, y = cat("A", 4), cat("C", 4)
    for alg in (direct_sum(x, y), graded_tensor(x, y), graded_tensor(cat("B", 3), cat("E", 3, "-1/2")),
                pullback(cat("B", 3), 6), pullback(cat("A", 2), 4), pullback(cat("F", 1), 3)):
        assert verify(alg).passed, alg.label


def test_direct_sum_dimensions_add():
    x, y = cat("B", 3), cat("D", 3)
    s = direct_sum(x, y)
    t = graded_tensor(x, y)
    for a in range(3):
        assert s.dim(a) == x.dim(a) + y.dim(a)
        assert s.sdim(a) == x.sdim(a) + y.sdim(a)
        assert t.dim(a) == x.dim(a) * y.dim(a)
        assert t.sdim(a) == x.sdim(a) * y.sdim(a)


def test_permute_basis_verifies():
    alg = cat("C", 4)
    rng = random.Random(5)
    perms = {}
    for a in range(alg.r):
        idx = list(range(alg.dim(a)))
        rng.shuffle(idx)
        perms[a] = idx
    assert verify(permute_basis(alg, perms)).passed


def test_malformed_shapes_rejected():
    alg = cat("E", 3, "2")
    with pytest.raises(MalformedAlgebra):
        FrobAlgebra(alg.space, alg.stored_mu(), alg.stored_delta(), alg.eps, alg.eta)


def test_e_kappa_counit():
    # unit algebra E_1 at r = 1 is the trivial TQFT
    alg = cat("E", 1, "1")
    assert compose(alg.eps, alg.eta).as_scalar() == 1
    assert compose(cat("E", 1, "2").eps, cat("E", 1, "2").eta).as_scalar() == Fraction(1, 2)
