"""Closed-surface invariants of a closed Lambda_r-Frobenius algebra.

* the sphere value ``eps o eta`` (only for r in {1, 2});
* torus values ``beta_d`` for each divisor d of r, computed both as a
  superdimension and through the torus composite;
* higher-genus values from traces of powers of the handle operator:
  ``alpha_n`` (genus ``nr+1``) for odd r and ``alpha_n^+``, ``alpha_n^-``
  (genus ``nr/2+1``) for even r.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from rspin.catalog import divisors
from rspin.cyclotomic import CycQ, as_cycq
from rspin.frobenius import FrobAlgebra, delta_pair
from rspin.graded import GradedMap, apply_at, compose, supertrace, tensor


class InvariantError(ValueError):
    """Invariant requested outside its domain (wrong parity of r, bad degrees...)."""


class CrossCheckError(ArithmeticError):
    """Two independent routes to the same invariant disagree."""


DEFAULT_HORIZON = 6


def default_base_degree(r: int) -> int:
    # x = 1 for both parities; for even r this is the choice under which the
    # Arf algebra has alpha^+ > 0
    return 1 % r


# -- genus 0 and 1 --------------------------------------------------------

def sphere_invariant(alg: FrobAlgebra) -> CycQ:
    if alg.r not in (1, 2):
        raise InvariantError(f"no r-spin sphere for r={alg.r}; needs r in {{1, 2}}")
    return compose(alg.eps, alg.eta).as_scalar()


def beta_via_dimension(alg: FrobAlgebra, d: int) -> CycQ:
    if d < 1 or alg.r % d:
        raise InvariantError(f"{d} does not divide r={alg.r}")
    return alg.sdim(d)


def torus_word(alg: FrobAlgebra, a: int, b: int):
    """Steps of ``eps mu_{-a,a} (N_{-a}^{b-1} (x) 1) Delta_{-a,a} eta`` as ``(map, pos)``."""
    return [
        (alg.eta, 0),
        (alg.delta(-a, a), 0),
        (alg.nakayama_power(-a, b - 1), 0),
        (alg.mu(-a, a), 0),
        (alg.eps, 0),
    ]


def beta_via_torus(alg: FrobAlgebra, a: int, b: int) -> CycQ:
    """Torus composite T(a, b); equals ``beta_{gcd(a,b,r)}``."""
    vec = {(): CycQ.one(alg.r)}
    for f, pos in torus_word(alg, a, b):
        vec = apply_at(f, vec, pos)
    return vec.get((), CycQ.zero(alg.r))


def torus_divisor(a: int, b: int, r: int) -> int:
    return gcd(gcd(a % r, b % r), r)


# -- handles ---------------------------------------------------------------

@dataclass
class HandleOperator:
    x: int
    kind: str
    a: int
    b: int
    map: GradedMap

    def __call__(self, vec):
        return apply_at(self.map, vec, 0)


def handle(alg: FrobAlgebra, x: int, a: int, b: int) -> HandleOperator:
    """``h_{x,a,b} = mu_{a,b} o Delta_{a,b}: C_x -> C_{x-2}``."""
    r = alg.r
    if (a + b + 1 - x) % r:
        raise InvariantError(f"handle needs a+b+1 = x mod {r}; got a={a}, b={b}, x={x}")
    m = compose(alg.mu(a, b), alg.delta(a, b))
    return HandleOperator(x % r, "plain", a % r, b % r, m)


def handle_pm(alg: FrobAlgebra, x: int, sign: int, a: int = 0) -> HandleOperator:
    """``h^+ = mu_{a,b} Delta_{a,b}``, ``h^- = mu_{a,b} (N_a (x) 1) Delta_{a,b}``, a even."""
    r = alg.r
    if r % 2:
        raise InvariantError("h^+ / h^- are defined for even r")
    if a % 2:
        raise InvariantError(f"first degree must be even, got {a}")
    b = x - a - 1
    d = alg.delta(a, b)
    if sign < 0:
        n = GradedMap.identity(alg.word(b), r=r)
        d = compose(tensor(alg.nakayama(a), n), d)
    m = compose(alg.mu(a, b), d)
    return HandleOperator(x % r, "plus" if sign > 0 else "minus", a % r, b % r, m)


def _power_traces(op: GradedMap, first: GradedMap | None, horizon: int):
    """``str(op^n)`` (or ``str(op^{n-1} first)``) for ``n = 1..horizon``."""
    out = []
    cur = first if first is not None else op
    for n in range(1, horizon + 1):
        out.append(supertrace(cur))
        if n < horizon:
            cur = compose(op, cur)
    return out


def handle_cycle(alg: FrobAlgebra, x: int, choices=None) -> GradedMap:
    """``H_x``: r handle maps from C_x back to C_x (odd r)."""
    r = alg.r
    choices = list(choices) if choices is not None else [0] * r
    if len(choices) != r:
        raise InvariantError(f"need {r} degree choices, got {len(choices)}")
    cur = GradedMap.identity(alg.word(x), r=r)
    for i, a in enumerate(choices):
        xi = x - 2 * i
        cur = compose(handle(alg, xi, a, xi - a - 1).map, cur)
    return cur


def handle_cycle_pm(alg: FrobAlgebra, x: int, minus_first: bool, choices=None) -> GradedMap:
    """r/2 signed handles from C_x to C_x; the innermost one is h^- if requested."""
    r = alg.r
    k = r // 2
    choices = list(choices) if choices is not None else [0] * k
    if len(choices) != k:
        raise InvariantError(f"need {k} degree choices, got {len(choices)}")
    cur = GradedMap.identity(alg.word(x), r=r)
    for i, a in enumerate(choices):
        sign = -1 if (i == 0 and minus_first) else 1
        cur = compose(handle_pm(alg, x - 2 * i, sign, a).map, cur)
    return cur


def alpha_odd_sequence(alg, horizon, x=None, choices=None):
    if alg.r % 2 == 0:
        raise InvariantError("alpha_n is for odd r; use alpha_even")
    x = default_base_degree(alg.r) if x is None else x
    return _power_traces(handle_cycle(alg, x, choices), None, horizon)


def alpha_odd(alg: FrobAlgebra, n: int, x: int | None = None, choices=None) -> CycQ:
    if n < 1:
        raise InvariantError("n must be >= 1")
    return alpha_odd_sequence(alg, n, x, choices)[-1]


def alpha_even_sequences(alg, horizon, x=None, choices=None):
    if alg.r % 2:
        raise InvariantError("alpha_n^+- is for even r; use alpha_odd")
    x = default_base_degree(alg.r) if x is None else x
    plus = handle_cycle_pm(alg, x, False, choices)
    minus = handle_cycle_pm(alg, x, True, choices)
    return _power_traces(plus, None, horizon), _power_traces(plus, minus, horizon)


def alpha_even(alg: FrobAlgebra, n: int, sign: int, x: int | None = None,
               choices=None) -> CycQ:
    if n < 1:
        raise InvariantError("n must be >= 1")
    plus, minus = alpha_even_sequences(alg, n, x, choices)
    return plus[-1] if sign > 0 else minus[-1]


def random_choices(r: int, rng: random.Random, even: bool = False):
    if even:
        return [2 * rng.randrange(r // 2) for _ in range(r // 2)]
    return [rng.randrange(r) for _ in range(r)]


# -- profiles -------------------------------------------------------------

@dataclass
class InvariantProfile:
    r: int
    horizon: int
    beta: dict
    sphere: CycQ | None = None
    alpha: list | None = None
    alpha_plus: list | None = None
    alpha_minus: list | None = None
    label: str = ""
    base_degree: int = field(default=1)

    def _entries(self):
        """Flat ``{name: value}`` view, used for pointwise arithmetic."""
        out = {}
        if self.sphere is not None:
            out["sphere"] = self.sphere
        for d, v in self.beta.items():
            out[("beta", d)] = v
        for name in ("alpha", "alpha_plus", "alpha_minus"):
            seq = getattr(self, name)
            if seq is not None:
                for n, v in enumerate(seq, 1):
                    out[(name, n)] = v
        return out

    def _rebuild(self, entries, label):
        p = InvariantProfile(self.r, self.horizon, {}, label=label,
                             base_degree=self.base_degree)
        p.sphere = entries.get("sphere")
        p.beta = {d: entries[("beta", d)] for d in self.beta}
        for name in ("alpha", "alpha_plus", "alpha_minus"):
            if getattr(self, name) is not None:
                setattr(p, name, [entries[(name, n)] for n in range(1, self.horizon + 1)])
        return p

    def surfaces(self):
        """``(genus, class, value)`` rows for every computed closed surface."""
        rows = []
        if self.sphere is not None:
            rows.append((0, "", self.sphere))
        for d, v in sorted(self.beta.items()):
            rows.append((1, f"d={d}", v))
        if self.alpha is not None:
            for n, v in enumerate(self.alpha, 1):
                rows.append((n * self.r + 1, "", v))
        if self.alpha_plus is not None:
            for n, (vp, vm) in enumerate(zip(self.alpha_plus, self.alpha_minus), 1):
                g = n * self.r // 2 + 1
                rows.append((g, "+", vp))
                rows.append((g, "-", vm))
        return rows

    def to_json(self) -> dict:
        obj = {
            "r": self.r,
            "label": self.label,
            "horizon": self.horizon,
            "sphere": None if self.sphere is None else self.sphere.to_json(),
            "beta": {str(d): v.to_json() for d, v in sorted(self.beta.items())},
        }
        if self.alpha is not None:
            obj["alpha"] = [v.to_json() for v in self.alpha]
        else:
            obj["alpha"] = {"plus": [v.to_json() for v in self.alpha_plus],
                            "minus": [v.to_json() for v in self.alpha_minus]}
        return obj

    @classmethod
    def from_json(cls, obj) -> "InvariantProfile":
        p = cls(int(obj["r"]), int(obj["horizon"]),
                {int(d): CycQ.from_json(v) for d, v in obj["beta"].items()},
                label=obj.get("label", ""))
        if obj.get("sphere") is not None:
            p.sphere = CycQ.from_json(obj["sphere"])
        al = obj["alpha"]
        if isinstance(al, dict):
            p.alpha_plus = [CycQ.from_json(v) for v in al["plus"]]
            p.alpha_minus = [CycQ.from_json(v) for v in al["minus"]]
        else:
            p.alpha = [CycQ.from_json(v) for v in al]
        return p

    def table(self) -> str:
        rows = [("genus", "class", "exact", "approx")]
        for g, cls_, v in self.surfaces():
            z = v.approx(1)
            rows.append((str(g), cls_, str(v), _fmt_complex(z)))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        lines = [f"# {self.label}  r={self.r}  horizon={self.horizon}"]
        for row in rows:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        return "\n".join(lines)


def _fmt_complex(z: complex) -> str:
    re_, im = z.real, z.imag
    if abs(im) < 5e-13:
        return f"{re_:.12g}"
    return f"{re_:.12g}{im:+.12g}i"


def profile(alg: FrobAlgebra, horizon: int = DEFAULT_HORIZON, x: int | None = None,
            cross_check: bool = True) -> InvariantProfile:
    """Assemble every invariant up to ``horizon``; beta goes through both routes."""
    if horizon < 1:
        raise InvariantError("horizon must be >= 1")
    r = alg.r
    beta = {}
    for d in divisors(r):
        v = beta_via_dimension(alg, d)
        if cross_check:
            w = beta_via_torus(alg, d, 0)
            if v != w:
                raise CrossCheckError(f"beta_{d}: dimension {v} != torus {w} for {alg.label}")
        beta[d] = v
    x = default_base_degree(r) if x is None else x
    p = InvariantProfile(r, horizon, beta, label=alg.label, base_degree=x)
    if r in (1, 2):
        p.sphere = sphere_invariant(alg)
    if r % 2:
        p.alpha = alpha_odd_sequence(alg, horizon, x)
    else:
        p.alpha_plus, p.alpha_minus = alpha_even_sequences(alg, horizon, x)
    return p


def _same_shape(p: InvariantProfile, q: InvariantProfile):
    if p.r != q.r or p.horizon != q.horizon:
        raise InvariantError(
            f"profiles differ in shape: r={p.r}/{q.r}, horizon={p.horizon}/{q.horizon}")


def char_add(p: InvariantProfile, q: InvariantProfile) -> InvariantProfile:
    _same_shape(p, q)
    e, f = p._entries(), q._entries()
    return p._rebuild({k: e[k] + f[k] for k in e}, f"({p.label} + {q.label})")


def char_mul(p: InvariantProfile, q: InvariantProfile) -> InvariantProfile:
    _same_shape(p, q)
    e, f = p._entries(), q._entries()
    return p._rebuild({k: e[k] * f[k] for k in e}, f"({p.label} (x) {q.label})")


def char_scale(p: InvariantProfile, t) -> InvariantProfile:
    t = as_cycq(Fraction(t) if not isinstance(t, CycQ) else t, p.r)
    e = p._entries()
    return p._rebuild({k: v * t for k, v in e.items()}, f"{t}*{p.label}")


def profiles_equal(p: InvariantProfile, q: InvariantProfile) -> bool:
    return p.r == q.r and p.horizon == q.horizon and p._entries() == q._entries()


def pullback_prediction(pc: InvariantProfile, r: int, horizon: int) -> InvariantProfile:
    """Profile of the pullback to r predicted from the profile over s = pc.r alone."""
    s = pc.r
    if r % s:
        raise InvariantError(f"{s} does not divide {r}")
    beta = {d: pc.beta[gcd(d, s)] for d in divisors(r)}
    p = InvariantProfile(r, horizon, beta, label=f"P*[{r},{s}]({pc.label})")
    if r in (1, 2) and pc.sphere is not None:
        p.sphere = pc.sphere
    if r % 2 and s % 2:
        idx = [n * r // s for n in range(1, horizon + 1)]
        src = [pc.alpha] * 2
    elif s % 2:
        idx = [n * r // (2 * s) for n in range(1, horizon + 1)]
        src = [pc.alpha] * 2
    else:
        idx = [n * r // s for n in range(1, horizon + 1)]
        src = [pc.alpha_plus, pc.alpha_minus]
    if idx[-1] > pc.horizon:
        raise InvariantError(f"source horizon {pc.horizon} too short; need {idx[-1]}")
    seqs = [[CycQ.lift(seq[i - 1], r) for i in idx] for seq in src]
    if r % 2:
        p.alpha = seqs[0]
    else:
        p.alpha_plus, p.alpha_minus = seqs
    return p


__all__ = [
    "pullback_prediction", "InvariantProfile", "HandleOperator", "InvariantError", "CrossCheckError",
    "sphere_invariant", "beta_via_dimension", "beta_via_torus", "torus_word",
    "torus_divisor", "handle", "handle_pm", "handle_cycle", "handle_cycle_pm",
    "alpha_odd", "alpha_even", "alpha_odd_sequence", "alpha_even_sequences",
    "profile", "char_add", "char_mul", "char_scale", "profiles_equal",
    "random_choices", "default_base_degree", "DEFAULT_HORIZON", "delta_pair",
]
