"""Pure-Python integer kernels behind :class:`rspin.cyclotomic.CycQ`.

An element of Q(zeta_r) is carried as an integer numerator vector ``nums``
(length phi(r)) over a single positive denominator ``den``.  Reduction modulo
the cyclotomic polynomial never introduces denominators because Phi_r is
monic with integer coefficients.

``phi`` is always the tuple of the lower coefficients of Phi_r, so that
X^n = -(phi[0] + phi[1] X + ... + phi[n-1] X^(n-1)) in the quotient ring.
"""

from math import gcd


def normalize(nums, den):
    """Return ``(nums, den)`` in lowest terms with ``den > 0``."""
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = gcd(den, *nums)
    if g != 1:
        if g == 0:
            return tuple(nums), 1
        nums = [x // g for x in nums]
        den //= g
    if not any(nums):
        return tuple(nums), 1
    return tuple(nums), den


def poly_mulmod(a, b, phi):
    n = len(phi)
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            base = k - n
            for j, p in enumerate(phi):
                if p:
                    prod[base + j] -= c * p
    return prod[:n]


def mul(an, ad, bn, bd, phi):
    return normalize(poly_mulmod(an, bn, phi), ad * bd)


def add(an, ad, bn, bd):
    if ad == bd:
        return normalize([x + y for x, y in zip(an, bn)], ad)
    return normalize([x * bd + y * ad for x, y in zip(an, bn)], ad * bd)


def fma(cn, cd, an, ad, bn, bd, phi):
    """Return c + a*b."""
    p = poly_mulmod(an, bn, phi)
    pd = ad * bd
    if cd == pd:
        return normalize([x + y for x, y in zip(cn, p)], cd)
    return normalize([x * pd + y * cd for x, y in zip(cn, p)], cd * pd)
