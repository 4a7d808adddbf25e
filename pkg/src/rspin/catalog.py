"""Constructors for the example algebras A (Arf), B, C, E_kappa, F and the distinguishing D."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from rspin.cyclotomic import CycQ, root_of_unity
from rspin.frobenius import (
    FrobAlgebra, _table_map, direct_sum_all, from_mu_and_delta_pair, pullback,
)
from rspin.graded import GradedSpace


class FamilyError(ValueError):
    """Parameters outside a family's allowed range."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    r: int
    kappa: Fraction | None = None

    @property
    def label(self) -> str:
        if self.family == "E":
            return f"E[{self.kappa}]^({self.r})"
        return f"{self.family}^({self.r})"


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _unit_counit(space, u_idx, z_idx, eps_val=1):
    eta = _table_map(space, (), (1,), {(): {(u_idx,): 1}})
    eps = _table_map(space, (-1,), (), {(z_idx,): {(): eps_val}})
    return eta, eps


def _mu_from_products(space, products, unit_deg=1, unit_idx=0):
    """Assemble mu maps from a sparse product table plus two-sided unit rules.

    ``products`` maps ``((a, i), (b, j))`` to ``{k: value}`` in degree ``a+b-1``.
    """
    r = space.r
    tables: dict = {}
    for ((a, i), (b, j)), outs in products.items():
        t = tables.setdefault((a % r, b % r), {})
        t[(i, j)] = {(k,): v for k, v in outs.items()}
    for a in range(r):
        for i in range(space.dim(a)):
            tables.setdefault((unit_deg % r, a), {})[(unit_idx, i)] = {(i,): 1}
            tables.setdefault((a, unit_deg % r), {})[(i, unit_idx)] = {(i,): 1}
    return {(a, b): _table_map(space, (a, b), (a + b - 1,), t) for (a, b), t in tables.items()}


def make_arf(r: int) -> FrobAlgebra:
    """The Arf algebra: ``A_x`` one-dimensional, odd for even x."""
    if r < 2 or r % 2:
        raise FamilyError(f"A needs even r >= 2, got {r}")
    space = GradedSpace(r, {x: ((f"v{x}",), (1 - x) % 2) for x in range(r)})
    half = Fraction(1, 2)
    mu = {(x, y): _table_map(space, (x, y), (x + y - 1,), {(0, 0): {(0,): 1}})
          for x in range(r) for y in range(r)}
    delta = {(x, y): _table_map(space, (x + y + 1,), (x, y), {(0,): {(0, 0): half}})
             for x in range(r) for y in range(r)}
    eta, eps = _unit_counit(space, 0, 0, 2)
    return FrobAlgebra(space, mu, delta, eta, eps, f"A^({r})")


def _vx_block(r):
    """Names and index of the one-dimensional pieces v_x, x != 0."""
    return {x: (f"v{x}",) for x in range(1, r)}


def make_b(r: int) -> FrobAlgebra:
    """B^(r) for odd r > 1; built from mu, unit, counit and the copairings."""
    if r < 3 or r % 2 == 0:
        raise FamilyError(f"B needs odd r > 1, got {r}")
    zeta = root_of_unity(r, 1)
    zero_names = ("v0",) + tuple(f"w{x}" for x in range(r))
    pieces = {0: (zero_names, 0)}
    pieces.update({x: (n, 0) for x, n in _vx_block(r).items()})
    space = GradedSpace(r, pieces)

    def w(x):
        return 1 + (x % r)

    prods = {}
    for x in range(r):
        if x == 1 or (-x) % r == 1:
            continue  # products with u come from the unit rule
        prods[((x, 0), ((-x) % r, 0))] = {0: 1}
    half = (r - 1) // 2
    for x in range(half + 1):
        prods[((0, w(x)), (0, w(-x)))] = {0: 1}
        prods[((0, w(-x)), (0, w(x)))] = {0: zeta ** (-x)}
    mu = _mu_from_products(space, prods)
    eta, eps = _unit_counit(space, 0, 0)
    pairs = {}
    for a in range(1, r):
        pairs[a] = _table_map(space, (), (a, -a), {(): {(0, 0): 1}})
    p0 = {(0, 0): CycQ.one(r), (w(0), w(0)): CycQ.one(r)}
    for x in range(1, half + 1):
        p0[(w(x), w(-x))] = zeta ** x
        p0[(w(-x), w(x))] = CycQ.one(r)
    pairs[0] = _table_map(space, (), (0, 0), {(): p0})
    return from_mu_and_delta_pair(space, mu, eta, eps, pairs, f"B^({r})")


def make_c(r: int) -> FrobAlgebra:
    """C^(r) for even r > 2."""
    if r < 4 or r % 2:
        raise FamilyError(f"C needs even r > 2, got {r}")
    zeta = root_of_unity(r, 1)
    zero_names = ("v0",) + tuple(f"w0,{x}" for x in range(r)) + tuple(f"w1,{x}" for x in range(r))
    pieces = {0: (zero_names, 0)}
    pieces.update({x: (n, 0) for x, n in _vx_block(r).items()})
    space = GradedSpace(r, pieces)

    def w(i, x):
        return 1 + i * r + (x % r)

    prods = {}
    for x in range(r):
        if x == 1 or (-x) % r == 1:
            continue
        prods[((x, 0), ((-x) % r, 0))] = {0: 1}
    for x in range(r):
        prods[((0, w(0, x)), (0, w(1, -x)))] = {0: 1}
        prods[((0, w(1, -x)), (0, w(0, x)))] = {0: zeta ** (-x)}
    mu = _mu_from_products(space, prods)
    eta, eps = _unit_counit(space, 0, 0)
    pairs = {a: _table_map(space, (), (a, -a), {(): {(0, 0): 1}}) for a in range(1, r)}
    p0 = {(0, 0): CycQ.one(r)}
    for x in range(r):
        p0[(w(0, x), w(1, -x))] = zeta ** x
        p0[(w(1, -x), w(0, x))] = CycQ.one(r)
    pairs[0] = _table_map(space, (), (0, 0), {(): p0})
    return from_mu_and_delta_pair(space, mu, eta, eps, pairs, f"C^({r})")


def _ungraded(names, products, unit, counit, copairing, label):
    """A commutative Frobenius algebra over r = 1, pulled back later."""
    space = GradedSpace(1, {0: (tuple(names), 0)})
    table = {(i, j): {(k,): v for k, v in outs.items()} for (i, j), outs in products.items()}
    mu = {(0, 0): _table_map(space, (0, 0), (0,), table)}
    eta = _table_map(space, (), (0,), {(): {(unit,): 1}})
    eps = _table_map(space, (0,), (), {(i,): {(): v} for i, v in counit.items()})
    pair = _table_map(space, (), (0, 0), {(): copairing})
    return from_mu_and_delta_pair(space, mu, eta, eps, {0: pair}, label)


def make_e(r: int, kappa) -> FrobAlgebra:
    """E_kappa: the line with counit ``kappa^{-1}``, pulled back to r."""
    kappa = Fraction(kappa)
    if kappa == 0:
        raise FamilyError("E needs kappa != 0")
    base = _ungraded(["1"], {(0, 0): {0: 1}}, 0, {0: 1 / kappa}, {(0, 0): kappa},
                     f"E[{kappa}]")
    out = pullback(base, r)
    out.label = f"E[{kappa}]^({r})"
    return out


def make_f(r: int) -> FrobAlgebra:
    """F: k[x]/(x^2) with eps(1) = 0, eps(x) = 1, pulled back to r."""
    base = _ungraded(["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
                     0, {1: 1}, {(0, 1): 1, (1, 0): 1}, "F")
    out = pullback(base, r)
    out.label = f"F^({r})"
    return out


# -- the distinguishing algebra -----------------------------------------

def _block_beta(r: int, p: int, l: int, d: int) -> int:
    """Torus invariant at divisor d of the prime-p block (before multiplicities)."""
    if p == 2:
        # P*_{r,2} A^(2) contributes +1 / -1; the C^(2^m) for m >= 2 add 1 or 2^{m+1}+1
        total = 1 if d % 2 else -1
        for m in range(2, l + 1):
            total += 2 * 2 ** m + 1 if d % 2 ** m == 0 else 1
        return total
    return l + sum(p ** m for m in range(1, l + 1) if d % p ** m == 0)


def d_blocks(r: int):
    """Blocks of D: list of ``(prime, exponent, multiplicity)``.

    Odd primes follow the ``c_{i+1} = c_i (beta_r + 1)`` rule.  With a factor 2
    the even block goes first and the step after it uses the spread of its
    torus values plus one, which keeps every later block from cancelling it.
    """
    if r < 2:
        raise FamilyError("D needs r > 1")
    fac = factorize(r)
    out = []
    c = 1
    for p, l in fac:
        out.append((p, l, c))
        vals = [_block_beta(r, p, l, d) for d in divisors(r)]
        if p == 2:
            c *= max(vals) - min(vals) + 1
        else:
            c *= _block_beta(r, p, l, r) + 1
    return out


def predicted_d_beta(r: int) -> dict[int, int]:
    """Closed-form torus table of D, used as a construction-time cross-check."""
    return {d: sum(c * _block_beta(r, p, l, d) for p, l, c in d_blocks(r))
            for d in divisors(r)}


def make_d(r: int, check: bool = True) -> FrobAlgebra:
    """The algebra with pairwise distinct torus invariants."""
    parts = []
    for p, l, c in d_blocks(r):
        block = []
        if p == 2:
            block.append(pullback(make_arf(2), r))
            for m in range(2, l + 1):
                block.append(pullback(make_c(2 ** m), r))
        else:
            for m in range(1, l + 1):
                block.append(pullback(make_b(p ** m), r))
        parts.extend(block * c)
    out = direct_sum_all(parts)
    out.label = f"D^({r})"
    if check:
        table = {d: out.sdim(d) for d in divisors(r)}
        pred = predicted_d_beta(r)
        if any(table[d] != pred[d] for d in table):
            raise ArithmeticError(f"D^({r}) torus table {table} differs from {pred}")
        vals = list(table.values())
        if len(set(vals)) != len(vals):
            raise ArithmeticError(f"D^({r}) torus invariants are not distinct: {table}")
    return out


def make(spec: FamilySpec) -> FrobAlgebra:
    fam = spec.family.upper()
    if fam == "A":
        return make_arf(spec.r)
    if fam == "B":
        return make_b(spec.r)
    if fam == "C":
        return make_c(spec.r)
    if fam == "E":
        return make_e(spec.r, spec.kappa if spec.kappa is not None else 1)
    if fam == "F":
        return make_f(spec.r)
    if fam == "D":
        return make_d(spec.r)
    raise FamilyError(f"unknown family {spec.family!r}")


__all__ = [
    "FamilySpec", "FamilyError", "make", "make_arf", "make_b", "make_c", "make_e",
    "make_f", "make_d", "d_blocks", "predicted_d_beta", "divisors", "factorize",
]
