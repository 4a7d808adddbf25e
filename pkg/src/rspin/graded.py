"""Z/r-graded super vector spaces and parity-even linear maps between tensor words.

A :class:`GradedSpace` assigns to each degree a finite list of named basis
vectors with parities.  A :class:`WordSpace` is an ordered tensor product of
pieces ``C_{a1} (x) ... (x) C_{ak}``; its basis keys are flat tuples
``(a1, i1, a2, i2, ...)``.  The empty word is the monoidal unit, whose single
basis key is ``()``.

Maps store their columns sparsely: ``cols[in_key] = {out_key: CycQ}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from rspin.cyclotomic import CycQ, as_cycq


class ShapeError(ValueError):
    """Domain/codomain mismatch or a malformed basis key."""


class ParityError(ValueError):
    """A map would send an even vector to an odd one (or vice versa)."""


@dataclass(frozen=True)
class Piece:
    names: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.parities):
            raise ShapeError("names and parities differ in length")
        if any(p not in (0, 1) for p in self.parities):
            raise ShapeError("parity must be 0 or 1")

    @property
    def dim(self) -> int:
        return len(self.names)


_EMPTY = Piece((), ())


class GradedSpace:
    """Finite-dimensional Z/r-graded super vector space over Q(zeta_r)."""

    __slots__ = ("r", "_pieces", "_hash")

    def __init__(self, r: int, pieces):
        if r < 1:
            raise ValueError("r must be positive")
        self.r = r
        canon: dict[int, Piece] = {}
        for deg, piece in dict(pieces).items():
            d = deg % r
            if d in canon:
                raise ShapeError(f"degree {deg} given twice modulo {r}")
            if not isinstance(piece, Piece):
                names, parities = piece
                if isinstance(parities, int):
                    parities = (parities,) * len(names)
                piece = Piece(tuple(names), tuple(parities))
            if piece.dim:
                canon[d] = piece
        self._pieces = tuple(sorted(canon.items()))
        self._hash = None

    def piece(self, a: int) -> Piece:
        a %= self.r
        for d, p in self._pieces:
            if d == a:
                return p
        return _EMPTY

    def dim(self, a: int) -> int:
        return self.piece(a).dim

    def parity(self, a: int, i: int) -> int:
        return self.piece(a).parities[i]

    def sdim(self, a: int) -> CycQ:
        """Superdimension of the degree-``a`` piece."""
        p = self.piece(a)
        return CycQ.from_rational(self.r, sum(1 - 2 * s for s in p.parities))

    def total_dim(self) -> int:
        return sum(p.dim for _, p in self._pieces)

    def degrees(self):
        return [d for d, _ in self._pieces]

    def index(self, a: int, name: str) -> int:
        return self.piece(a).names.index(name)

    def basis(self):
        """All ``(degree, index)`` pairs in canonical order."""
        return [(d, i) for d, p in self._pieces for i in range(p.dim)]

    def __eq__(self, other):
        return (isinstance(other, GradedSpace) and self.r == other.r
                and self._pieces == other._pieces)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.r, self._pieces))
        return self._hash

    def __repr__(self):
        dims = {d: p.dim for d, p in self._pieces}
        return f"GradedSpace(r={self.r}, dims={dims})"


class WordSpace:
    """Tensor word of pieces of graded spaces; each slot is ``(space, degree)``."""

    __slots__ = ("slots", "_basis", "_hash")

    def __init__(self, slots=()):
        self.slots = tuple((sp, a % sp.r) for sp, a in slots)
        self._basis = None
        self._hash = None

    @classmethod
    def of(cls, space: GradedSpace, *degrees: int) -> "WordSpace":
        return cls([(space, a) for a in degrees])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.slots)

    def __len__(self):
        return len(self.slots)

    def __add__(self, other: "WordSpace") -> "WordSpace":
        return WordSpace(self.slots + other.slots)

    def basis(self):
        if self._basis is None:
            ranges = [[(a, i) for i in range(sp.dim(a))] for sp, a in self.slots]
            self._basis = [sum(combo, ()) for combo in product(*ranges)]
        return self._basis

    def dim(self) -> int:
        n = 1
        for sp, a in self.slots:
            n *= sp.dim(a)
        return n

    def parity(self, key) -> int:
        s = 0
        for k, (sp, a) in enumerate(self.slots):
            s += sp.parity(a, key[2 * k + 1])
        return s & 1

    def slot_parities(self, key):
        return [sp.parity(a, key[2 * k + 1]) for k, (sp, a) in enumerate(self.slots)]

    def __eq__(self, other):
        return isinstance(other, WordSpace) and self.slots == other.slots

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.slots)
        return self._hash

    def __repr__(self):
        return f"WordSpace{self.degrees}"


UNIT = WordSpace(())


class GradedMap:
    """Parity-even linear map ``dom -> cod`` with sparse exact entries."""

    __slots__ = ("dom", "cod", "r", "cols")

    def __init__(self, dom: WordSpace, cod: WordSpace, cols=None, r: int | None = None,
                 check: bool = True):
        self.dom = dom
        self.cod = cod
        if r is None:
            rs = {sp.r for sp, _ in dom.slots + cod.slots}
            if len(rs) != 1:
                raise ShapeError("cannot infer r for a map between unit words")
            r = rs.pop()
        self.r = r
        clean = {}
        for k, col in (cols or {}).items():
            c = {o: as_cycq(v, r) for o, v in col.items() if v}
            if c:
                clean[k] = c
        self.cols = clean
        if check:
            self._check()

    def _check(self):
        dom_keys = set(self.dom.basis())
        cod_keys = set(self.cod.basis())
        for k, col in self.cols.items():
            if k not in dom_keys:
                raise ShapeError(f"input key {k} not in domain {self.dom}")
            pk = self.dom.parity(k)
            for o in col:
                if o not in cod_keys:
                    raise ShapeError(f"output key {o} not in codomain {self.cod}")
                if self.cod.parity(o) != pk:
                    raise ParityError(f"entry {k} -> {o} is parity-odd")

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, word: WordSpace, r: int | None = None) -> "GradedMap":
        r = r if r is not None else (word.slots[0][0].r if word.slots else None)
        one = CycQ.one(r)
        return cls(word, word, {k: {k: one} for k in word.basis()}, r=r, check=False)

    @classmethod
    def zero(cls, dom: WordSpace, cod: WordSpace, r: int | None = None) -> "GradedMap":
        return cls(dom, cod, {}, r=r, check=False)

    @classmethod
    def scalar(cls, value: CycQ, r: int) -> "GradedMap":
        return cls(UNIT, UNIT, {(): {(): value}}, r=r, check=False)

    # -- access -----------------------------------------------------------

    def entry(self, out_key, in_key) -> CycQ:
        v = self.cols.get(in_key, {}).get(out_key)
        return v if v is not None else CycQ.zero(self.r)

    @property
    def entries(self) -> dict:
        return {(o, k): v for k, col in self.cols.items() for o, v in col.items()}

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse vector ``{in_key: CycQ}``."""
        out: dict = {}
        for k, c in vec.items():
            for o, v in self.cols.get(k, {}).items():
                prev = out.get(o)
                out[o] = c * v if prev is None else prev.fma(c, v)
        return {o: v for o, v in out.items() if v}

    def as_scalar(self) -> CycQ:
        if self.dom.slots or self.cod.slots:
            raise ShapeError("map is not a scalar")
        return self.entry((), ())

    def is_zero(self) -> bool:
        return not self.cols

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and self.dom == other.dom
                and self.cod == other.cod and self.cols == other.cols)

    def __hash__(self):
        return hash((self.dom, self.cod, len(self.cols)))

    def first_difference(self, other: "GradedMap"):
        """Return ``(out_key, in_key, self_value, other_value)`` for one unequal entry."""
        for k in sorted(set(self.cols) | set(other.cols)):
            a = self.cols.get(k, {})
            b = other.cols.get(k, {})
            for o in sorted(set(a) | set(b)):
                x = a.get(o, CycQ.zero(self.r))
                y = b.get(o, CycQ.zero(self.r))
                if x != y:
                    return o, k, x, y
        return None

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if self.dom != other.dom or self.cod != other.cod:
            raise ShapeError("cannot add maps of different shapes")
        cols = {k: dict(c) for k, c in self.cols.items()}
        for k, col in other.cols.items():
            tgt = cols.setdefault(k, {})
            for o, v in col.items():
                tgt[o] = tgt[o] + v if o in tgt else v
        return GradedMap(self.dom, self.cod, cols, r=self.r, check=False)

    def scale(self, c) -> "GradedMap":
        c = as_cycq(c, self.r)
        cols = {k: {o: v * c for o, v in col.items()} for k, col in self.cols.items()}
        return GradedMap(self.dom, self.cod, cols, r=self.r, check=False)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        return compose(self, other)

    def __repr__(self):
        return f"GradedMap({self.dom} -> {self.cod}, nnz={len(self.entries)})"


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """``g o f``; requires ``f.cod == g.dom``."""
    if f.cod != g.dom:
        raise ShapeError(f"cannot compose: {f.cod} != {g.dom}")
    cols = {}
    for k, col in f.cols.items():
        out = g.apply(col)
        if out:
            cols[k] = out
    return GradedMap(f.dom, g.cod, cols, r=f.r, check=False)


def tensor(f: GradedMap, g: GradedMap) -> GradedMap:
    """Kronecker product; no sign since both factors are parity-even."""
    if f.r != g.r:
        raise ShapeError("tensor of maps over different r")
    cols = {}
    for k1, c1 in f.cols.items():
        for k2, c2 in g.cols.items():
            cols[k1 + k2] = {o1 + o2: v1 * v2 for o1, v1 in c1.items()
                             for o2, v2 in c2.items()}
    return GradedMap(f.dom + g.dom, f.cod + g.cod, cols, r=f.r, check=False)


def tensor_all(*maps: GradedMap) -> GradedMap:
    out = maps[0]
    for m in maps[1:]:
        out = tensor(out, m)
    return out


def permutation(word: WordSpace, perm, r: int | None = None) -> GradedMap:
    """Reorder slots: output slot ``j`` is input slot ``perm[j]``, with Koszul sign."""
    perm = tuple(perm)
    if sorted(perm) != list(range(len(word))):
        raise ShapeError(f"{perm} is not a permutation of {len(word)} slots")
    if r is None:
        r = word.slots[0][0].r
    cod = WordSpace([word.slots[p] for p in perm])
    one = CycQ.one(r)
    cols = {}
    for key in word.basis():
        par = word.slot_parities(key)
        sign = 0
        # count pairs whose order flips and are both odd
        for j in range(len(perm)):
            for l in range(j + 1, len(perm)):
                if perm[j] > perm[l] and par[perm[j]] and par[perm[l]]:
                    sign ^= 1
        out = sum((key[2 * p: 2 * p + 2] for p in perm), ())
        cols[key] = {out: -one if sign else one}
    return GradedMap(word, cod, cols, r=r, check=False)


def braiding(v: WordSpace, w: WordSpace, r: int | None = None) -> GradedMap:
    """Symmetric braiding ``V (x) W -> W (x) V``, ``v(x)w -> (-1)^{|v||w|} w(x)v``."""
    n, m = len(v), len(w)
    perm = list(range(n, n + m)) + list(range(n))
    return permutation(v + w, perm, r=r)


def supertrace(f: GradedMap) -> CycQ:
    if f.dom != f.cod:
        raise ShapeError("supertrace of a non-endomorphism")
    total = CycQ.zero(f.r)
    for k, col in f.cols.items():
        v = col.get(k)
        if v:
            total = total - v if f.dom.parity(k) else total + v
    return total


def sdim(space: GradedSpace, a: int) -> CycQ:
    return space.sdim(a)


def dense(f: GradedMap):
    """Dense matrix (list of rows) in canonical basis order; for small oracles."""
    rows_keys = f.cod.basis()
    cols_keys = f.dom.basis()
    return [[f.entry(o, k) for k in cols_keys] for o in rows_keys]


def apply_at(f: GradedMap, vec: dict, pos: int) -> dict:
    """Apply ``f`` to slots ``pos .. pos+len(f.dom)-1`` of every key in ``vec``.

    This is ``(1 (x) f (x) 1)`` acting on a sparse vector; no sign arises since
    ``f`` is parity-even.
    """
    k = 2 * len(f.dom.slots)
    lo = 2 * pos
    cols = f.cols
    out: dict = {}
    for key, c in vec.items():
        col = cols.get(key[lo:lo + k])
        if not col:
            continue
        head, tail = key[:lo], key[lo + k:]
        for o, v in col.items():
            nk = head + o + tail
            prev = out.get(nk)
            out[nk] = c * v if prev is None else prev.fma(c, v)
    return {kk: v for kk, v in out.items() if v}


def swap_at(word: WordSpace, vec: dict, pos: int) -> dict:
    """Koszul-signed swap of slots ``pos`` and ``pos+1``."""
    lo = 2 * pos
    out = {}
    for key, c in vec.items():
        a, i, b, j = key[lo:lo + 4]
        sp1 = word.slots[pos][0]
        sp2 = word.slots[pos + 1][0]
        odd = sp1.parity(a, i) and sp2.parity(b, j)
        out[key[:lo] + (b, j, a, i) + key[lo + 4:]] = -c if odd else c
    return out
