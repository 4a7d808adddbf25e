"""Closed Lambda_r-Frobenius algebras: the data, axiom verification and operations.

An algebra is a graded space ``C = (C_a)_{a in Z/r}`` with maps

* ``mu[a,b]: C_a (x) C_b -> C_{a+b-1}``
* ``delta[a,b]: C_{a+b+1} -> C_a (x) C_b``
* ``eta: 1 -> C_1`` and ``eps: C_{-1} -> 1``

Nakayama automorphisms ``N_a`` are derived from the pairing and cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from rspin.cyclotomic import CycQ, as_cycq
from rspin.graded import (
    UNIT, GradedMap, GradedSpace, Piece, ShapeError, WordSpace, apply_at, swap_at,
)


class MalformedAlgebra(ValueError):
    """Structure maps have the wrong shape; distinct from an axiom failure."""


class NonDegenerateError(ValueError):
    """The pairing admits no copairing, so Nakayama maps are undefined."""


def _table_map(space, dom_degs, cod_degs, table, check=True):
    """Build a map from ``{in_index_tuple: {out_index_tuple: value}}``."""
    r = space.r
    dom = WordSpace.of(space, *dom_degs)
    cod = WordSpace.of(space, *cod_degs)
    dd = dom.degrees
    cd = cod.degrees
    cols = {}
    for ins, outs in table.items():
        key = tuple(x for pair in zip(dd, ins) for x in pair)
        col = {}
        for o, v in outs.items():
            okey = tuple(x for pair in zip(cd, o) for x in pair)
            col[okey] = as_cycq(v, r)
        cols[key] = col
    return GradedMap(dom, cod, cols, r=r, check=check)


class FrobAlgebra:
    """A closed Lambda_r-Frobenius algebra with exact structure constants.

    ``mu`` and ``delta`` map degree pairs to :class:`GradedMap` values; missing
    pairs are zero maps.  Instances are treated as immutable.
    """

    def __init__(self, space: GradedSpace, mu: dict, delta: dict, eta: GradedMap,
                 eps: GradedMap, label: str = ""):
        self.space = space
        self.r = r = space.r
        self.label = label
        self._mu = {(a % r, b % r): m for (a, b), m in mu.items() if not m.is_zero()}
        self._delta = {(a % r, b % r): m for (a, b), m in delta.items() if not m.is_zero()}
        self.eta = eta
        self.eps = eps
        self._nak: dict[int, GradedMap] = {}
        self._nak_pow: dict[tuple[int, int], GradedMap] = {}
        self._check_shapes()

    def _check_shapes(self):
        r = self.r
        if self.eta.dom != UNIT or self.eta.cod != self.word(1):
            raise MalformedAlgebra("eta must map the unit word to C_1")
        if self.eps.dom != self.word(-1) or self.eps.cod != UNIT:
            raise MalformedAlgebra("eps must map C_{-1} to the unit word")
        for (a, b), m in self._mu.items():
            if m.dom != self.word(a, b) or m.cod != self.word(a + b - 1):
                raise MalformedAlgebra(f"mu[{a},{b}] has shape {m.dom} -> {m.cod}")
        for (a, b), m in self._delta.items():
            if m.dom != self.word(a + b + 1) or m.cod != self.word(a, b):
                raise MalformedAlgebra(f"delta[{a},{b}] has shape {m.dom} -> {m.cod}")
        for m in list(self._mu.values()) + list(self._delta.values()) + [self.eta, self.eps]:
            if m.r != r:
                raise MalformedAlgebra("structure map over the wrong field")

    # -- basic access -----------------------------------------------------

    def word(self, *degrees) -> WordSpace:
        return WordSpace.of(self.space, *degrees)

    def mu(self, a: int, b: int) -> GradedMap:
        r = self.r
        m = self._mu.get((a % r, b % r))
        if m is None:
            m = GradedMap.zero(self.word(a, b), self.word(a + b - 1), r=r)
        return m

    def delta(self, a: int, b: int) -> GradedMap:
        r = self.r
        m = self._delta.get((a % r, b % r))
        if m is None:
            m = GradedMap.zero(self.word(a + b + 1), self.word(a, b), r=r)
        return m

    def dim(self, a: int) -> int:
        return self.space.dim(a)

    def sdim(self, a: int) -> CycQ:
        return self.space.sdim(a)

    def stored_mu(self):
        return dict(self._mu)

    def stored_delta(self):
        return dict(self._delta)

    def delta_pair(self, a: int) -> GradedMap:
        """``delta_a = Delta_{a,-a} o eta``, a map ``1 -> C_a (x) C_{-a}``."""
        return delta_pair(self, a)

    def nakayama(self, a: int) -> GradedMap:
        a %= self.r
        if a not in self._nak:
            self._nak[a] = nakayama_of(self, a)
        return self._nak[a]

    def nakayama_power(self, a: int, k: int) -> GradedMap:
        """``N_a^k`` with ``k`` read modulo r (valid once the deck relation holds)."""
        a %= self.r
        k %= self.r
        hit = self._nak_pow.get((a, k))
        if hit is not None:
            return hit
        if k == 0:
            res = GradedMap.identity(self.word(a), r=self.r)
        else:
            from rspin.graded import compose
            res = compose(self.nakayama(a), self.nakayama_power(a, k - 1))
        self._nak_pow[(a, k)] = res
        return res

    def __repr__(self):
        dims = {a: self.dim(a) for a in range(self.r) if self.dim(a)}
        return f"FrobAlgebra({self.label!r}, r={self.r}, dims={dims})"


def unit_vector(key, r):
    return {key: CycQ.one(r)}


def delta_pair(alg: FrobAlgebra, a: int) -> GradedMap:
    from rspin.graded import compose
    return compose(alg.delta(a, -a), alg.eta)


def nakayama_of(alg: FrobAlgebra, a: int, pair: GradedMap | None = None) -> GradedMap:
    """``N_a = (1 (x) eps mu_{a,-a}) (sigma (x) 1) (1 (x) delta_a)``."""
    r = alg.r
    pair = pair if pair is not None else delta_pair(alg, a)
    mu = alg.mu(a, -a)
    word3 = alg.word(a, a, -a)
    cols = {}
    for key in alg.word(a).basis():
        vec = apply_at(pair, unit_vector(key, r), 1)
        vec = swap_at(word3, vec, 0)
        vec = apply_at(mu, vec, 1)
        vec = apply_at(alg.eps, vec, 1)
        if vec:
            cols[key] = vec
    return GradedMap(alg.word(a), alg.word(a), cols, r=r, check=False)


# -- verification ---------------------------------------------------------

AXIOMS = (
    "associativity", "coassociativity", "unitality", "counitality", "frobenius",
    "nondegeneracy", "commutativity", "twist", "twist_power", "deck",
)


@dataclass
class AxiomResult:
    name: str
    passed: bool = True
    checks: int = 0
    witness: dict | None = None


@dataclass
class AxiomReport:
    label: str
    r: int
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(res.passed for res in self.results.values())

    def failed(self):
        return [n for n, res in self.results.items() if not res.passed]

    def lines(self):
        out = []
        for name in AXIOMS:
            res = self.results.get(name)
            if res is None:
                continue
            if res.passed:
                out.append(f"{name:16s} pass  ({res.checks} checks)")
            else:
                w = res.witness
                out.append(f"{name:16s} FAIL  degrees={w['degrees']} input={w['input']} "
                           f"output={w['output']} lhs={w['lhs']} rhs={w['rhs']}")
        return out

    def to_json(self):
        return {
            "label": self.label,
            "r": self.r,
            "passed": self.passed,
            "axioms": {
                n: {"passed": res.passed, "checks": res.checks,
                    "witness": None if res.witness is None else
                    {k: (v.to_json() if isinstance(v, CycQ) else v)
                     for k, v in res.witness.items()}}
                for n, res in self.results.items()
            },
        }


def _run(steps, vec):
    """Apply a pipeline of ``("map", f, pos)`` / ``("swap", word, pos)`` steps."""
    for kind, obj, pos in steps:
        if kind == "map":
            vec = apply_at(obj, vec, pos)
        else:
            vec = swap_at(obj, vec, pos)
        if not vec:
            break
    return vec


def _support(steps, dom: WordSpace):
    """Domain keys on which the first step can be nonzero; other keys map to 0."""
    if not steps or steps[0][0] != "map":
        return set(dom.basis())
    _, f, pos = steps[0]
    n = len(f.dom)
    left = WordSpace(dom.slots[:pos]).basis()
    right = WordSpace(dom.slots[pos + n:]).basis()
    return {lk + k + rk for k in f.cols for lk in left for rk in right}


class _Checker:
    def __init__(self, alg, name):
        self.alg = alg
        self.res = AxiomResult(name)

    def compare(self, degrees, dom: WordSpace, lhs_steps, rhs_steps):
        if not self.res.passed:
            return
        r = self.alg.r
        keys = _support(lhs_steps, dom) | _support(rhs_steps, dom)
        self.res.checks += dom.dim()
        for key in sorted(keys):
            left = _run(lhs_steps, unit_vector(key, r))
            right = _run(rhs_steps, unit_vector(key, r))
            if left != right:
                for o in sorted(set(left) | set(right)):
                    lv = left.get(o, CycQ.zero(r))
                    rv = right.get(o, CycQ.zero(r))
                    if lv != rv:
                        self.res.passed = False
                        self.res.witness = {"degrees": list(degrees), "input": list(key),
                                            "output": list(o), "lhs": lv, "rhs": rv}
                        return


def verify(alg: FrobAlgebra, axioms=AXIOMS) -> AxiomReport:
    """Check every axiom exactly, for every degree combination and basis tuple."""
    r = alg.r
    rep = AxiomReport(alg.label, r)
    ident = lambda *degs: GradedMap.identity(alg.word(*degs), r=r)  # noqa: E731
    M = alg.mu
    D = alg.delta

    def step(f, pos=0):
        return ("map", f, pos)

    if "associativity" in axioms:
        ch = _Checker(alg, "associativity")
        for a in range(r):
            for b in range(r):
                for c in range(r):
                    ch.compare((a, b, c), alg.word(a, b, c),
                               [step(M(a, b)), step(M(a + b - 1, c))],
                               [step(M(b, c), 1), step(M(a, b + c - 1))])
        rep.results[ch.res.name] = ch.res

    if "coassociativity" in axioms:
        ch = _Checker(alg, "coassociativity")
        for a in range(r):
            for b in range(r):
                for c in range(r):
                    ch.compare((a, b, c), alg.word(a + b + c + 2),
                               [step(D(a + b + 1, c)), step(D(a, b))],
                               [step(D(a, b + c + 1)), step(D(b, c), 1)])
        rep.results[ch.res.name] = ch.res

    if "unitality" in axioms:
        ch = _Checker(alg, "unitality")
        for a in range(r):
            ch.compare((a,), alg.word(a), [step(alg.eta, 0), step(M(1, a))], [])
            ch.compare((a,), alg.word(a), [step(alg.eta, 1), step(M(a, 1))], [])
        rep.results[ch.res.name] = ch.res

    if "counitality" in axioms:
        ch = _Checker(alg, "counitality")
        for a in range(r):
            ch.compare((a,), alg.word(a), [step(D(-1, a)), step(alg.eps, 0)], [])
            ch.compare((a,), alg.word(a), [step(D(a, -1)), step(alg.eps, 1)], [])
        rep.results[ch.res.name] = ch.res

    if "frobenius" in axioms:
        ch = _Checker(alg, "frobenius")
        for a in range(r):
            for b in range(r):
                for c in range(r):
                    d = a + b - c - 2
                    ch.compare((a, b, c, d), alg.word(a, b),
                               [step(D(c, a - c - 1)), step(M(d - b + 1, b), 1)],
                               [step(D(b - d - 1, d), 1), step(M(a, c - a + 1))])
        rep.results[ch.res.name] = ch.res

    pairs = {}
    if "nondegeneracy" in axioms:
        ch = _Checker(alg, "nondegeneracy")
        for a in range(r):
            pa = pairs.setdefault(a % r, delta_pair(alg, a))
            pm = pairs.setdefault(-a % r, delta_pair(alg, -a))
            ch.compare((a,), alg.word(a),
                       [step(pa, 0), step(M(-a, a), 1), step(alg.eps, 1)], [])
            ch.compare((a,), alg.word(a),
                       [step(pm, 1), step(M(a, -a), 0), step(alg.eps, 0)], [])
        rep.results[ch.res.name] = ch.res

    nondeg_ok = rep.results.get("nondegeneracy", AxiomResult("x")).passed
    N = alg.nakayama
    if "deck" in axioms:
        ch = _Checker(alg, "deck")
        for a in range(r):
            steps = [step(N(a))] * r
            ch.compare((a,), alg.word(a), steps, [])
        rep.results[ch.res.name] = ch.res
    deck_ok = rep.results.get("deck", AxiomResult("x")).passed

    if "twist_power" in axioms:
        ch = _Checker(alg, "twist_power")
        for a in range(r):
            ch.compare((a,), alg.word(a), [step(N(a))] * (a if a else r), [])
        rep.results[ch.res.name] = ch.res

    NP = alg.nakayama_power
    if "commutativity" in axioms:
        ch = _Checker(alg, "commutativity")
        if not (nondeg_ok and deck_ok):
            _skip(ch, "requires nondegeneracy and deck relations")
        else:
            for a in range(r):
                for b in range(r):
                    w = alg.word(b, a)
                    mid = [("swap", w, 0), step(M(a, b))]
                    ch.compare((a, b), w, [step(NP(b, a - 1), 0), step(M(b, a))], mid)
                    ch.compare((a, b), w, [step(NP(a, 1 - b), 1), step(M(b, a))], mid)
        rep.results[ch.res.name] = ch.res

    if "twist" in axioms:
        ch = _Checker(alg, "twist")
        if not (nondeg_ok and deck_ok):
            _skip(ch, "requires nondegeneracy and deck relations")
        else:
            for a in range(r):
                for b in range(r):
                    a2 = (a + b - 1) % r
                    pa = pairs.get(a) or delta_pair(alg, a)
                    pb = pairs.get(a2) or delta_pair(alg, a2)
                    ch.compare((a, b), UNIT,
                               [step(pa), step(NP(a, -b)), step(M(a, -a))],
                               [step(pb), step(NP(a2, -b)), step(M(a2, -a2))])
        rep.results[ch.res.name] = ch.res
    return rep


def _skip(ch, why):
    ch.res.passed = False
    ch.res.witness = {"degrees": [], "input": [], "output": [], "lhs": why, "rhs": why}


# -- construction helpers -------------------------------------------------

def from_mu_and_delta_pair(space: GradedSpace, mu: dict, eta: GradedMap, eps: GradedMap,
                           pairs: dict, label: str = "") -> FrobAlgebra:
    """Rebuild the coproduct as ``Delta_{a,b} = (1 (x) mu_{-a,a+b+1}) (delta_a (x) 1)``."""
    r = space.r
    mu = {(a % r, b % r): m for (a, b), m in mu.items()}

    def mu_get(a, b):
        m = mu.get((a % r, b % r))
        if m is None:
            m = GradedMap.zero(WordSpace.of(space, a, b), WordSpace.of(space, a + b - 1), r=r)
        return m

    delta = {}
    for a in range(r):
        pa = pairs.get(a)
        if pa is None:
            continue
        for b in range(r):
            src = WordSpace.of(space, a + b + 1)
            tgt = WordSpace.of(space, a, b)
            m = mu_get(-a, a + b + 1)
            cols = {}
            for key in src.basis():
                vec = apply_at(pa, unit_vector(key, r), 0)
                vec = apply_at(m, vec, 1)
                if vec:
                    cols[key] = vec
            if cols:
                delta[(a, b)] = GradedMap(src, tgt, cols, r=r, check=False)
    return FrobAlgebra(space, mu, delta, eta, eps, label)


def _relabel_key(key, degs):
    return tuple(x for k in range(len(degs)) for x in (degs[k], key[2 * k + 1]))


def pullback(alg: FrobAlgebra, r: int) -> FrobAlgebra:
    """``P*_{r,s}``: piece ``a`` is the source piece ``a mod s``; maps re-indexed."""
    s = alg.r
    if r < 1 or r % s:
        raise ValueError(f"pullback needs s | r, got s={s}, r={r}")
    if r == s:
        return alg
    space = GradedSpace(r, {a: alg.space.piece(a % s) for a in range(r)})

    def move(f: GradedMap, dom_degs, cod_degs):
        dom = WordSpace.of(space, *dom_degs)
        cod = WordSpace.of(space, *cod_degs)
        dd, cd = dom.degrees, cod.degrees
        cols = {}
        for k, col in f.cols.items():
            cols[_relabel_key(k, dd)] = {_relabel_key(o, cd): v.lift(r) for o, v in col.items()}
        return GradedMap(dom, cod, cols, r=r, check=False)

    mu, delta = {}, {}
    for a in range(r):
        for b in range(r):
            m = alg.mu(a, b)
            if not m.is_zero():
                mu[(a, b)] = move(m, (a, b), (a + b - 1,))
            d = alg.delta(a, b)
            if not d.is_zero():
                delta[(a, b)] = move(d, (a + b + 1,), (a, b))
    eta = move(alg.eta, (), (1,))
    eps = move(alg.eps, (-1,), ())
    label = f"P*[{r},{s}]({alg.label})"
    return FrobAlgebra(space, mu, delta, eta, eps, label)


def _shift_key(key, offsets_per_slot):
    return tuple(x for k in range(len(key) // 2)
                 for x in (key[2 * k], key[2 * k + 1] + offsets_per_slot[k]))


def direct_sum(x: FrobAlgebra, y: FrobAlgebra) -> FrobAlgebra:
    """Degreewise ``X_a (+) Y_a`` with block-diagonal structure maps."""
    if x.r != y.r:
        raise ValueError(f"direct sum needs equal r, got {x.r} and {y.r}")
    r = x.r
    pieces = {}
    for a in range(r):
        px, py = x.space.piece(a), y.space.piece(a)
        names = tuple("X." + n for n in px.names) + tuple("Y." + n for n in py.names)
        pieces[a] = Piece(names, px.parities + py.parities)
    space = GradedSpace(r, pieces)

    def merge(fx: GradedMap, fy: GradedMap, dom_degs, cod_degs):
        dom = WordSpace.of(space, *dom_degs)
        cod = WordSpace.of(space, *cod_degs)
        cols = {k: dict(col) for k, col in fx.cols.items()}
        in_off = [x.dim(a) for a in dom.degrees]
        out_off = [x.dim(a) for a in cod.degrees]
        for k, col in fy.cols.items():
            nk = _shift_key(k, in_off)
            tgt = cols.setdefault(nk, {})
            for o, v in col.items():
                no = _shift_key(o, out_off)
                tgt[no] = tgt[no] + v if no in tgt else v
        return GradedMap(dom, cod, cols, r=r, check=False)

    mu, delta = {}, {}
    for a in range(r):
        for b in range(r):
            m = merge(x.mu(a, b), y.mu(a, b), (a, b), (a + b - 1,))
            if not m.is_zero():
                mu[(a, b)] = m
            d = merge(x.delta(a, b), y.delta(a, b), (a + b + 1,), (a, b))
            if not d.is_zero():
                delta[(a, b)] = d
    eta = merge(x.eta, y.eta, (), (1,))
    eps = merge(x.eps, y.eps, (-1,), ())
    return FrobAlgebra(space, mu, delta, eta, eps, f"({x.label} + {y.label})")


def direct_sum_all(algs) -> FrobAlgebra:
    algs = list(algs)
    out = algs[0]
    for a in algs[1:]:
        out = direct_sum(out, a)
    return out


def graded_tensor(x: FrobAlgebra, y: FrobAlgebra) -> FrobAlgebra:
    """Degreewise ``X_a (x) Y_a``; the middle factors are exchanged with the Koszul sign."""
    if x.r != y.r:
        raise ValueError(f"graded tensor needs equal r, got {x.r} and {y.r}")
    r = x.r
    pieces = {}
    ny = {}
    for a in range(r):
        px, py = x.space.piece(a), y.space.piece(a)
        ny[a] = py.dim
        names, pars = [], []
        for i, n1 in enumerate(px.names):
            for j, n2 in enumerate(py.names):
                names.append(f"{n1}*{n2}")
                pars.append((px.parities[i] + py.parities[j]) % 2)
        pieces[a] = Piece(tuple(names), tuple(pars))
    space = GradedSpace(r, pieces)

    def split(key):
        # flat key over the product space -> (key in X, key in Y, parities)
        kx, ky = [], []
        for s in range(len(key) // 2):
            a, idx = key[2 * s], key[2 * s + 1]
            i, j = divmod(idx, ny[a])
            kx += [a, i]
            ky += [a, j]
        return tuple(kx), tuple(ky)

    def join(kx, ky):
        out = []
        for s in range(len(kx) // 2):
            a = kx[2 * s]
            out += [a, kx[2 * s + 1] * ny[a] + ky[2 * s + 1]]
        return tuple(out)

    def koszul(kx, ky, word_len):
        # sign of reordering x1 y1 x2 y2 ... into x1 x2 ... y1 y2 ...
        sign = 0
        for s in range(word_len):
            py_s = y.space.parity(ky[2 * s], ky[2 * s + 1])
            if not py_s:
                continue
            for t in range(s + 1, word_len):
                if x.space.parity(kx[2 * t], kx[2 * t + 1]):
                    sign ^= 1
        return sign

    def combine(fx: GradedMap, fy: GradedMap, dom_degs, cod_degs):
        dom = WordSpace.of(space, *dom_degs)
        cod = WordSpace.of(space, *cod_degs)
        nin, nout = len(dom_degs), len(cod_degs)
        cols = {}
        for kx, colx in fx.cols.items():
            for ky, coly in fy.cols.items():
                s_in = koszul(kx, ky, nin)
                col = {}
                for ox, vx in colx.items():
                    for oy, vy in coly.items():
                        s = s_in ^ koszul(ox, oy, nout)
                        v = vx * vy
                        col[join(ox, oy)] = -v if s else v
                cols[join(kx, ky)] = col
        return GradedMap(dom, cod, cols, r=r, check=False)

    mu, delta = {}, {}
    for a in range(r):
        for b in range(r):
            m = combine(x.mu(a, b), y.mu(a, b), (a, b), (a + b - 1,))
            if not m.is_zero():
                mu[(a, b)] = m
            d = combine(x.delta(a, b), y.delta(a, b), (a + b + 1,), (a, b))
            if not d.is_zero():
                delta[(a, b)] = d
    eta = combine(x.eta, y.eta, (), (1,))
    eps = combine(x.eps, y.eps, (-1,), ())
    return FrobAlgebra(space, mu, delta, eta, eps, f"({x.label} (x) {y.label})")


def permute_basis(alg: FrobAlgebra, perms: dict) -> FrobAlgebra:
    """Reorder basis vectors: ``perms[a][new_index] = old_index``."""
    r = alg.r
    inv = {}
    pieces = {}
    for a in range(r):
        p = alg.space.piece(a)
        perm = list(perms.get(a, range(p.dim)))
        if sorted(perm) != list(range(p.dim)):
            raise ValueError(f"bad permutation for degree {a}")
        inv[a] = {old: new for new, old in enumerate(perm)}
        pieces[a] = Piece(tuple(p.names[o] for o in perm), tuple(p.parities[o] for o in perm))
    space = GradedSpace(r, pieces)

    def re(key):
        return tuple(x for s in range(len(key) // 2)
                     for x in (key[2 * s], inv[key[2 * s]][key[2 * s + 1]]))

    def move(f, dom_degs, cod_degs):
        cols = {re(k): {re(o): v for o, v in col.items()} for k, col in f.cols.items()}
        return GradedMap(WordSpace.of(space, *dom_degs), WordSpace.of(space, *cod_degs),
                         cols, r=r, check=False)

    mu = {(a, b): move(m, (a, b), (a + b - 1,)) for (a, b), m in alg.stored_mu().items()}
    delta = {(a, b): move(m, (a + b + 1,), (a, b)) for (a, b), m in alg.stored_delta().items()}
    return FrobAlgebra(space, mu, delta, move(alg.eta, (), (1,)), move(alg.eps, (-1,), ()),
                       alg.label)


def gcd3(a: int, b: int, r: int) -> int:
    return gcd(gcd(a % r, b % r), r)


__all__ = [
    "FrobAlgebra", "AxiomReport", "AxiomResult", "MalformedAlgebra", "NonDegenerateError",
    "verify", "nakayama_of", "delta_pair", "from_mu_and_delta_pair", "pullback",
    "direct_sum", "direct_sum_all", "graded_tensor", "permute_basis", "AXIOMS",
    "ShapeError", "_table_map",
]
