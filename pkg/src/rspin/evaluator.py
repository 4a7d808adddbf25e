"""Generator-word expressions: parsing, degree typechecking and evaluation.

Grammar (``.`` is composition, applied right to left; ``*`` is tensor and
binds tighter)::

    expr    := term ("." term)*
    term    := factor ("*" factor)*
    factor  := primary ("^" int)*
    primary := generator | "(" expr ")"
    generator := "eta" | "eps" | "mu[a,b]" | "delta[a,b]" | "N[a]"
               | "id[a,...]" | "swap[a,b]"

Degrees are integers, possibly negative, read modulo r at typecheck time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from rspin.cyclotomic import CycQ
from rspin.frobenius import FrobAlgebra
from rspin.graded import GradedMap, UNIT, braiding, compose, tensor


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, column: int):
        super().__init__(f"column {column}: {msg}")
        self.column = column


class ExprTypeError(ValueError):
    """Degree interfaces do not match."""


GENERATORS = {"eta": 0, "eps": 0, "mu": 2, "delta": 2, "N": 1, "id": None, "swap": 2}


@dataclass(frozen=True)
class Gen:
    name: str
    args: tuple[int, ...]
    col: int = 0

    def __str__(self):
        if self.name in ("eta", "eps"):
            return self.name
        return f"{self.name}[{','.join(map(str, self.args))}]"


@dataclass(frozen=True)
class Compose:
    outer: object
    inner: object

    def __str__(self):
        return f"({self.outer} . {self.inner})"


@dataclass(frozen=True)
class Tensor:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Power:
    base: object
    k: int
    col: int = 0

    def __str__(self):
        return f"{self.base}^{self.k}"


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_]+)|(?P<int>-?\d+)|(?P<op>[.*^()\[\],]))")


def _tokenize(text):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start + 1))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        parts = [node]
        while self.peek()[:2] == ("op", "."):
            self.take()
            parts.append(self.term())
        # a . b . c = a o (b o c)
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = Compose(p, out)
        return out

    def term(self):
        node = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = Tensor(node, self.factor())
        return node

    def factor(self):
        node = self.primary()
        while self.peek()[:2] == ("op", "^"):
            tok = self.take()
            k = self.take("int")
            node = Power(node, int(k[1]), tok[2])
        return node

    def primary(self):
        tok = self.peek()
        if tok[:2] == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        if tok[0] != "name":
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected a generator, found {got}", tok[2])
        self.take()
        name = tok[1]
        if name not in GENERATORS:
            raise ExprSyntaxError(f"unknown generator {name!r}", tok[2])
        arity = GENERATORS[name]
        args: list[int] = []
        if arity == 0:
            return Gen(name, (), tok[2])
        self.take("op", "[")
        if not (name == "id" and self.peek()[:2] == ("op", "]")):
            args.append(int(self.take("int")[1]))
            while self.peek()[:2] == ("op", ","):
                self.take()
                args.append(int(self.take("int")[1]))
        close = self.take("op", "]")
        if arity is not None and len(args) != arity:
            raise ExprSyntaxError(f"{name} takes {arity} degree(s), got {len(args)}", close[2])
        return Gen(name, tuple(args), tok[2])


def parse(text: str):
    p = _Parser(text)
    node = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
    return node


def _is_nakayama(node):
    while isinstance(node, Power):
        node = node.base
    return isinstance(node, Gen) and node.name == "N"


def _iface(t):
    return "(" + ",".join(map(str, t)) + ")"


def typecheck(node, r: int):
    """Return ``(domain, codomain)`` degree tuples, reduced mod r."""
    if isinstance(node, Gen):
        a = [x % r for x in node.args]
        if node.name == "eta":
            return (), (1 % r,)
        if node.name == "eps":
            return ((-1) % r,), ()
        if node.name == "mu":
            return (a[0], a[1]), ((a[0] + a[1] - 1) % r,)
        if node.name == "delta":
            return ((a[0] + a[1] + 1) % r,), (a[0], a[1])
        if node.name == "N":
            return (a[0],), (a[0],)
        if node.name == "id":
            return tuple(a), tuple(a)
        if node.name == "swap":
            return (a[0], a[1]), (a[1], a[0])
    if isinstance(node, Compose):
        d_in, c_in = typecheck(node.inner, r)
        d_out, c_out = typecheck(node.outer, r)
        if c_in != d_out:
            raise ExprTypeError(
                f"mismatch: {node.inner} has codomain {_iface(c_in)}, "
                f"{node.outer} needs {_iface(d_out)}")
        return d_in, c_out
    if isinstance(node, Tensor):
        d1, c1 = typecheck(node.left, r)
        d2, c2 = typecheck(node.right, r)
        return d1 + d2, c1 + c2
    if isinstance(node, Power):
        d, c = typecheck(node.base, r)
        if d != c:
            raise ExprTypeError(f"power of a non-endomorphism {node.base}")
        if node.k < 0 and not _is_nakayama(node.base):
            raise ExprTypeError(f"negative power only allowed for N, got {node}")
        return d, c
    raise ExprTypeError(f"unknown node {node!r}")


def _eval(node, alg: FrobAlgebra) -> GradedMap:
    r = alg.r
    if isinstance(node, Gen):
        a = node.args
        if node.name == "eta":
            return alg.eta
        if node.name == "eps":
            return alg.eps
        if node.name == "mu":
            return alg.mu(a[0], a[1])
        if node.name == "delta":
            return alg.delta(a[0], a[1])
        if node.name == "N":
            return alg.nakayama(a[0])
        if node.name == "id":
            return GradedMap.identity(alg.word(*a), r=r) if a else GradedMap.scalar(CycQ.one(r), r)
        if node.name == "swap":
            return braiding(alg.word(a[0]), alg.word(a[1]), r=r)
    if isinstance(node, Compose):
        return compose(_eval(node.outer, alg), _eval(node.inner, alg))
    if isinstance(node, Tensor):
        left, right = _eval(node.left, alg), _eval(node.right, alg)
        if not left.dom.slots and not left.cod.slots:
            return right.scale(left.as_scalar())
        if not right.dom.slots and not right.cod.slots:
            return left.scale(right.as_scalar())
        return tensor(left, right)
    if isinstance(node, Power):
        if _is_nakayama(node.base) and isinstance(node.base, Gen):
            return alg.nakayama_power(node.base.args[0], node.k)
        base = _eval(node.base, alg)
        k = node.k
        if k < 0:
            k %= r
        out = GradedMap.identity(base.dom, r=r) if base.dom.slots else GradedMap.scalar(
            CycQ.one(r), r)
        for _ in range(k):
            out = compose(base, out)
        return out
    raise ExprTypeError(f"unknown node {node!r}")


def evaluate(node, alg: FrobAlgebra):
    """Exact value: a :class:`CycQ` for closed words, a :class:`GradedMap` otherwise."""
    if isinstance(node, str):
        node = parse(node)
    typecheck(node, alg.r)
    out = _eval(node, alg)
    if out.dom == UNIT and out.cod == UNIT:
        return out.as_scalar()
    return out


# -- canonical closed words -----------------------------------------------

def sphere_word() -> str:
    return "eps . eta"


def torus_word(a: int, b: int) -> str:
    """Torus T(a, b); the twist power follows the convention of the invariants module."""
    return (f"eps . mu[{-a},{a}] . (N[{-a}]^{b - 1} * id[{a}]) . "
            f"delta[{-a},{a}] . eta")


def trace_word(inner: str, x: int) -> str:
    """Close an endomorphism of C_x into a scalar: the trace through the copairing."""
    return f"eps . mu[{-x},{x}] . swap[{x},{-x}] . (({inner}) * id[{-x}]) . delta[{x},{-x}] . eta"


def handle_chain(r: int, x: int, steps: int, minus_first: bool = False) -> str:
    parts = []
    for i in range(steps):
        xi = x - 2 * i
        b = xi - 1
        if i == 0 and minus_first:
            parts.append(f"mu[0,{b}] . (N[0] * id[{b}]) . delta[0,{b}]")
        else:
            parts.append(f"mu[0,{b}] . delta[0,{b}]")
    return " . ".join(reversed(parts))


def alpha_word(r: int, x: int = 1, sign: int = 1) -> str:
    """Genus r+1 (odd r) or r/2+1 (even r) closed word for the first alpha invariant."""
    if r % 2:
        return trace_word(handle_chain(r, x, r), x)
    return trace_word(handle_chain(r, x, r // 2, minus_first=sign < 0), x)


__all__ = [
    "parse", "typecheck", "evaluate", "ExprSyntaxError", "ExprTypeError",
    "Gen", "Compose", "Tensor", "Power", "sphere_word", "torus_word",
    "trace_word", "handle_chain", "alpha_word",
]
