"""Reading and writing algebras as ``rspin-frob/1`` JSON documents.

Nakayama maps are never stored; they are recomputed from the pairing.
"""

from __future__ import annotations

import json

from rspin.cyclotomic import CycQ
from rspin.frobenius import FrobAlgebra, MalformedAlgebra
from rspin.graded import GradedMap, GradedSpace, Piece, WordSpace

FORMAT = "rspin-frob/1"


class FileFormatError(ValueError):
    """The document is not a well-formed algebra file."""


def _parity_field(p: Piece):
    if all(x == 0 for x in p.parities):
        return "even"
    if all(x == 1 for x in p.parities):
        return "odd"
    return ["odd" if x else "even" for x in p.parities]


def algebra_to_json(alg: FrobAlgebra) -> dict:
    pieces = []
    for a in alg.space.degrees():
        p = alg.space.piece(a)
        pieces.append({"degree": a, "dim": p.dim, "parity": _parity_field(p),
                       "basis": list(p.names)})
    mu = []
    for (a, b), m in sorted(alg.stored_mu().items()):
        ent = [[o[1], k[1], k[3], v.to_json()]
               for k, col in sorted(m.cols.items()) for o, v in sorted(col.items())]
        mu.append({"a": a, "b": b, "entries": ent})
    delta = []
    for (a, b), m in sorted(alg.stored_delta().items()):
        ent = [[o[1], o[3], k[1], v.to_json()]
               for k, col in sorted(m.cols.items()) for o, v in sorted(col.items())]
        delta.append({"a": a, "b": b, "entries": ent})
    eta = [[o[1], v.to_json()] for o, v in sorted(alg.eta.cols.get((), {}).items())]
    eps = [[k[1], col[()].to_json()] for k, col in sorted(alg.eps.cols.items())]
    return {"format": FORMAT, "r": alg.r, "label": alg.label, "pieces": pieces,
            "eta": eta, "eps": eps, "mu": mu, "delta": delta}


def dumps(alg: FrobAlgebra) -> str:
    return json.dumps(algebra_to_json(alg), sort_keys=True, indent=1)


def _need(obj, key, kind):
    if key not in obj:
        raise FileFormatError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise FileFormatError(f"field {key!r} has the wrong type")
    return val


def _value(v, r):
    try:
        c = CycQ.from_json(v)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"bad scalar {v!r}: {exc}") from None
    if c.r != r and r % c.r:
        raise FileFormatError(f"scalar over r={c.r} in a file with r={r}")
    return c.lift(r) if c.r != r else c


def algebra_from_json(obj) -> FrobAlgebra:
    if not isinstance(obj, dict) or obj.get("format") != FORMAT:
        raise FileFormatError(f"not an {FORMAT} document")
    r = _need(obj, "r", int)
    if r < 1:
        raise FileFormatError("r must be positive")
    pieces = {}
    for p in _need(obj, "pieces", list):
        deg = _need(p, "degree", int)
        dim = _need(p, "dim", int)
        names = _need(p, "basis", list)
        par = p.get("parity", "even")
        if isinstance(par, str):
            par = [par] * dim
        if len(names) != dim or len(par) != dim:
            raise FileFormatError(f"piece {deg}: dim, basis and parity disagree")
        if any(x not in ("even", "odd") for x in par):
            raise FileFormatError(f"piece {deg}: parity must be 'even' or 'odd'")
        pieces[deg] = Piece(tuple(map(str, names)), tuple(int(x == "odd") for x in par))
    space = GradedSpace(r, pieces)

    def build(dom_degs, cod_degs, triples):
        dom = WordSpace.of(space, *dom_degs)
        cod = WordSpace.of(space, *cod_degs)
        dd, cd = dom.degrees, cod.degrees
        cols: dict = {}
        for ins, outs, v in triples:
            k = tuple(x for pr in zip(dd, ins) for x in pr)
            o = tuple(x for pr in zip(cd, outs) for x in pr)
            cols.setdefault(k, {})[o] = _value(v, r)
        try:
            return GradedMap(dom, cod, cols, r=r)
        except ValueError as exc:
            raise FileFormatError(str(exc)) from None

    try:
        mu = {}
        for blk in _need(obj, "mu", list):
            a, b = _need(blk, "a", int), _need(blk, "b", int)
            trip = [((e[1], e[2]), (e[0],), e[3]) for e in _need(blk, "entries", list)]
            mu[(a, b)] = build((a, b), (a + b - 1,), trip)
        delta = {}
        for blk in _need(obj, "delta", list):
            a, b = _need(blk, "a", int), _need(blk, "b", int)
            trip = [((e[2],), (e[0], e[1]), e[3]) for e in _need(blk, "entries", list)]
            delta[(a, b)] = build((a + b + 1,), (a, b), trip)
        eta = build((), (1,), [((), (e[0],), e[1]) for e in _need(obj, "eta", list)])
        eps = build((-1,), (), [((e[0],), (), e[1]) for e in _need(obj, "eps", list)])
    except (IndexError, TypeError) as exc:
        raise FileFormatError(f"malformed entry list: {exc}") from None
    try:
        return FrobAlgebra(space, mu, delta, eta, eps, str(obj.get("label", "")))
    except MalformedAlgebra as exc:
        raise FileFormatError(str(exc)) from None


def loads(text: str) -> FrobAlgebra:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from None
    return algebra_from_json(obj)


def save(alg: FrobAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(alg))
        fh.write("\n")


def load(path) -> FrobAlgebra:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
