"""Semisimplicity, torus-value patterns and the rational generating function test.

The membership test asks whether ``sum_{n>=1} a_n X^n`` can lie in the span of
``1/(1 - lambda X)``.  That holds exactly when ``a_n = sum_i c_i lambda_i^n``
with distinct nonzero ``lambda_i``, i.e. when the minimal linear recurrence has
a squarefree characteristic polynomial with nonzero constant term.  A finite
prefix can only be *consistent* with that; it never proves it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from rspin.cyclotomic import CycQ, as_cycq
from rspin.frobenius import FrobAlgebra
from rspin.linalg import rank, solve


@dataclass
class SsimReport:
    semisimple: bool
    radical_dim: int
    trace_form_rank: int
    total_dim: int

    def to_json(self):
        return {"semisimple": self.semisimple, "radical_dim": self.radical_dim,
                "trace_form_rank": self.trace_form_rank, "total_dim": self.total_dim}


def structure_constants(alg: FrobAlgebra):
    """Ungraded multiplication table ``{(i, j): {k: c}}`` on a flat basis."""
    basis = alg.space.basis()
    index = {b: n for n, b in enumerate(basis)}
    table = {}
    for (a, b), m in alg.stored_mu().items():
        for key, col in m.cols.items():
            i = index[(key[0], key[1])]
            j = index[(key[2], key[3])]
            table[(i, j)] = {index[(o[0], o[1])]: v for o, v in col.items()}
    return basis, table


def is_semisimple(alg: FrobAlgebra) -> SsimReport:
    """Dickson's criterion: nondegenerate trace form ``Tr(L_{ab})`` (char 0)."""
    basis, table = structure_constants(alg)
    n = len(basis)
    r = alg.r
    # t_k = Tr(L_{e_k})
    t = [CycQ.zero(r) for _ in range(n)]
    for (i, j), col in table.items():
        v = col.get(j)
        if v:
            t[i] = t[i] + v
    rows = []
    for i in range(n):
        row = {}
        for j in range(n):
            col = table.get((i, j))
            if not col:
                continue
            s = CycQ.zero(r)
            for k, c in col.items():
                if t[k]:
                    s = s.fma(c, t[k])
            if s:
                row[j] = s
        rows.append(row)
    rk = rank(rows)
    return SsimReport(rk == n, n - rk, rk, n)


def two_value_check(beta: dict) -> bool:
    """At most two distinct torus values."""
    return len(set(beta.values())) <= 2


def _piece_signature(alg, a):
    p = alg.space.piece(a)
    return (p.dim, sum(p.parities))


def graded_pattern_check(alg: FrobAlgebra) -> bool:
    """Dimension/parity shadow of the piece isomorphisms forced by semisimplicity."""
    r = alg.r
    for a in range(r):
        ref = 1 if (r % 2 or a % 2) else 0
        if _piece_signature(alg, a) != _piece_signature(alg, ref % r):
            return False
    return True


def distinctness_check(beta: dict) -> bool:
    vals = list(beta.values())
    return len(set(vals)) == len(vals)


# -- polynomials over Q(zeta_r), coefficients low to high -----------------

def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_derivative(p):
    return _trim([c * k for k, c in enumerate(p)][1:])


def poly_rem(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = b[-1].inv()
    while len(a) >= len(b):
        c = a[-1] * inv
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - c * bj
        a = _trim(a)
    return a


def poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_rem(a, b)
    if a:
        inv = a[-1].inv()
        a = [c * inv for c in a]
    return a


def is_squarefree(p) -> bool:
    p = _trim(p)
    if len(p) <= 2:
        return True
    return len(poly_gcd(p, poly_derivative(p))) == 1


# -- recurrence detection -------------------------------------------------

@dataclass
class RecurrenceReport:
    order: int
    recurrence_coeffs: list = field(default_factory=list)
    char_poly_squarefree: bool = True
    member_verdict: str = "inconclusive"
    horizon_used: int = 0
    reason: str = ""

    @property
    def char_poly(self):
        """Coefficients low to high of ``X^m - c_1 X^{m-1} - ... - c_m``."""
        m = self.order
        if not self.recurrence_coeffs and m:
            return []
        r = self.recurrence_coeffs[0].r if self.recurrence_coeffs else 1
        return [-c for c in reversed(self.recurrence_coeffs)] + [CycQ.one(r)]

    def to_json(self):
        return {
            "order": self.order,
            "recurrence_coeffs": [c.to_json() for c in self.recurrence_coeffs],
            "char_poly_squarefree": self.char_poly_squarefree,
            "member_verdict": self.member_verdict,
            "horizon_used": self.horizon_used,
            "reason": self.reason,
        }


def _common_r(prefix):
    return lcm(1, *(v.r for v in prefix if isinstance(v, CycQ)))


def minimal_recurrence(prefix, r: int):
    """Smallest m <= len/2 with ``a_n = sum_j c_j a_{n-j}`` on the whole prefix."""
    L = len(prefix)
    if not any(prefix):
        return 0, []
    for m in range(1, L // 2 + 1):
        rows, rhs = [], []
        for n in range(m, L):
            rows.append({j: prefix[n - j] for j in range(1, m + 1) if prefix[n - j]})
            rhs.append(prefix[n])
        sol = solve(rows, rhs, r)
        if sol is not None:
            return m, [sol.get(j, CycQ.zero(r)) for j in range(1, m + 1)]
    return None, []


def span_membership(prefix, r: int | None = None) -> RecurrenceReport:
    """Test a prefix ``a_1, a_2, ...`` against the span of ``1/(1 - lambda X)``."""
    prefix = list(prefix)
    if len(prefix) < 2:
        raise ValueError("prefix must have length >= 2")
    if r is None:
        r = _common_r(prefix)
    seq = [as_cycq(v, r) for v in prefix]
    L = len(seq)
    m, coeffs = minimal_recurrence(seq, r)
    if m is None:
        return RecurrenceReport(0, [], False, "inconclusive", L,
                                f"no recurrence of order <= {L // 2} fits; a longer prefix may")
    if m == 0:
        return RecurrenceReport(0, [], True, "consistent", L, "zero sequence")
    rep = RecurrenceReport(m, coeffs, True, "consistent", L)
    poly = rep.char_poly
    rep.char_poly_squarefree = is_squarefree(poly)
    if not rep.char_poly_squarefree:
        rep.member_verdict = "inconsistent"
        rep.reason = "characteristic polynomial not squarefree"
    elif not coeffs[-1]:
        rep.member_verdict = "inconsistent"
        rep.reason = "characteristic polynomial has a zero root"
    else:
        rep.reason = f"order {m} recurrence, squarefree, horizon {L}"
    return rep


__all__ = [
    "SsimReport", "RecurrenceReport", "is_semisimple", "two_value_check",
    "graded_pattern_check", "distinctness_check", "span_membership",
    "minimal_recurrence", "is_squarefree", "poly_gcd", "structure_constants",
]
