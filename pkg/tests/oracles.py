"""Independent sympy oracles used by several test modules."""

import sympy

from rspin.analysis import structure_constants


def recurrence_oracle(seq, max_order=4):
    """Brute force over orders 0..max_order with sympy; returns ``(order, verdict)``."""
    seq = [sympy.Rational(int(v.numerator), int(v.denominator)) for v in seq]
    L = len(seq)
    if all(v == 0 for v in seq):
        return 0, "consistent"
    for m in range(1, min(max_order, L // 2) + 1):
        cs = sympy.symbols(f"c1:{m + 1}")
        eqs = [sum(cs[j] * seq[n - 1 - j] for j in range(m)) - seq[n] for n in range(m, L)]
        sol = sympy.linsolve(eqs, cs)
        if not sol:
            continue
        # free parameters mean a lower order also fits; take the parameter-free point
        vals = [sympy.sympify(v).subs({c: 0 for c in cs}) for v in next(iter(sol))]
        X = sympy.Symbol("X")
        poly = sympy.Poly(X ** m - sum(vals[j] * X ** (m - 1 - j) for j in range(m)), X)
        if sympy.degree(sympy.gcd(poly, poly.diff(X)), X) > 0 or vals[-1] == 0:
            return m, "inconsistent"
        return m, "consistent"
    return None, "inconclusive"


def trace_form_rank(alg):
    """Rank of ``Tr(L_a L_b)`` over Q; only for rational structure constants."""
    basis, table = structure_constants(alg)
    n = len(basis)
    mats = []
    for i in range(n):
        L = sympy.zeros(n, n)
        for j in range(n):
            for k, c in table.get((i, j), {}).items():
                q = c.to_rational()
                L[k, j] = sympy.Rational(q.numerator, q.denominator)
        mats.append(L)
    T = sympy.Matrix(n, n, lambda i, j: (mats[i] * mats[j]).trace())
    return T.rank()
