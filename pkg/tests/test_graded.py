import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from rspin.cyclotomic import CycQ
from rspin.graded import (GradedMap, GradedSpace, ParityError, ShapeError, WordSpace, apply_at,
                          braiding, compose, permutation, supertrace, swap_at, tensor)

R = 3
SPACE = GradedSpace(R, {0: (("a", "b", "c"), (0, 1, 1)), 1: (("u",), 1), 2: (("p", "q"), 0)})


def random_map(dom, cod, rng):
    """Random parity-even map with small integer entries."""
    cols = {}
    for k in dom.basis():
        col = {}
        for o in cod.basis():
            if dom.parity(k) == cod.parity(o) and rng.random() < 0.6:
                col[o] = rng.randint(-3, 3)
        cols[k] = col
    return GradedMap(dom, cod, cols, r=dom.slots[0][0].r if dom.slots else R)


def koszul_oracle(word, key, perm):
    """Sign of the induced permutation of the odd slots, via sympy."""
    par = word.slot_parities(key)
    odd_in = [p for p in range(len(perm)) if par[p]]
    odd_out = [p for p in perm if par[p]]
    if len(odd_in) < 2:
        return 1
    rank = {p: i for i, p in enumerate(odd_in)}
    return Permutation([rank[p] for p in odd_out]).signature()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_permutation_signs_match_oracle(n):
    rng = random.Random(n)
    for _ in range(5):
        degs = [rng.randrange(R) for _ in range(n)]
        word = WordSpace.of(SPACE, *degs)
        for perm in itertools.permutations(range(n)):
            m = permutation(word, perm)
            for key in word.basis():
                (out, val), = m.cols[key].items()
                assert val == koszul_oracle(word, key, perm)
                assert out == sum((key[2 * p: 2 * p + 2] for p in perm), ())


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, R - 1), min_size=1, max_size=2),
       st.lists(st.integers(0, R - 1), min_size=1, max_size=2))
def test_braiding_is_symmetric(d1, d2):
    v, w = WordSpace.of(SPACE, *d1), WordSpace.of(SPACE, *d2)
    assert compose(braiding(w, v), braiding(v, w)) == GradedMap.identity(v + w)


def test_braiding_naturality():
    rng = random.Random(1)
    v, w = WordSpace.of(SPACE, 0), WordSpace.of(SPACE, 2)
    f, g = random_map(v, v, rng), random_map(w, w, rng)
    lhs = compose(braiding(v, w), tensor(f, g))
    rhs = compose(tensor(g, f), braiding(v, w))
    assert lhs == rhs


def test_interchange_law():
    rng = random.Random(2)
    a, b, c = (WordSpace.of(SPACE, d) for d in (0, 1, 2))
    f1, g1 = random_map(a, b + c, rng), random_map(b + c, a, rng)
    f2, g2 = random_map(c, c, rng), random_map(c, c, rng)
    assert compose(tensor(g1, g2), tensor(f1, f2)) == tensor(compose(g1, f1), compose(g2, f2))


def test_apply_at_matches_tensor_with_identity():
    rng = random.Random(3)
    word = WordSpace.of(SPACE, 0, 2, 0)
    f = random_map(WordSpace.of(SPACE, 2), WordSpace.of(SPACE, 2), rng)
    full = tensor(tensor(GradedMap.identity(WordSpace.of(SPACE, 0)), f),
                  GradedMap.identity(WordSpace.of(SPACE, 0)))
    for key in word.basis():
        vec = {key: CycQ.one(R)}
        assert apply_at(f, vec, 1) == full.apply(vec)


def test_swap_at_matches_braiding():
    word = WordSpace.of(SPACE, 0, 0, 1)
    full = tensor(braiding(WordSpace.of(SPACE, 0), WordSpace.of(SPACE, 0)),
                  GradedMap.identity(WordSpace.of(SPACE, 1)))
    for key in word.basis():
        vec = {key: CycQ.one(R)}
        assert swap_at(word, vec, 0) == full.apply(vec)


def test_supertrace_and_sdim():
    odd_line = GradedSpace(2, {0: (("v",), 1)})
    assert supertrace(GradedMap.identity(WordSpace.of(odd_line, 0))) == -1
    assert SPACE.sdim(0) == -1
    assert SPACE.sdim(1) == -1
    assert SPACE.sdim(2) == 2
    # supertrace is multiplicative on tensor products
    rng = random.Random(4)
    a = WordSpace.of(SPACE, 0)
    f, g = random_map(a, a, rng), random_map(a, a, rng)
    assert supertrace(tensor(f, g)) == supertrace(f) * supertrace(g)
    # and cyclic
    assert supertrace(compose(f, g)) == supertrace(compose(g, f))


def test_odd_map_rejected():
    a = WordSpace.of(SPACE, 0)
    with pytest.raises(ParityError):
        GradedMap(a, a, {(0, 0): {(0, 1): 1}})


def test_compose_shape_mismatch():
    a, b = WordSpace.of(SPACE, 0), WordSpace.of(SPACE, 1)
    with pytest.raises(ShapeError):
        compose(GradedMap.identity(a), GradedMap.identity(b))


def test_space_basics():
    assert SPACE.dim(0) == 3 and SPACE.dim(5) == 2
    assert SPACE.total_dim() == 6
    assert SPACE.index(0, "c") == 2
    assert WordSpace.of(SPACE, 0, 1).dim() == 3
    with pytest.raises(ShapeError):
        GradedSpace(3, {0: (("x",), 0), 3: (("y",), 0)})
