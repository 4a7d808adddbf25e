# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the routines in ``_pykernels``.

Every entry point first tries a fixed-width int64 path with overflow-checked
arithmetic; any overflow (or an operand that does not fit) drops back to the
arbitrary-precision Python implementation, so results are always exact.
"""

from rspin import _pykernels as _py

cdef extern from *:
    """
    static inline int rs_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int rs_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int rs_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int rs_mul_ovf(long long a, long long b, long long *r) nogil
    int rs_add_ovf(long long a, long long b, long long *r) nogil
    int rs_sub_ovf(long long a, long long b, long long *r) nogil

cdef enum:
    MAXN = 256

cdef long long LLMIN = -9223372036854775807 - 1


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline int _load(object seq, long long *out, Py_ssize_t n) except -1:
    """Copy ``seq`` into ``out``; return 1 if some entry does not fit int64."""
    cdef Py_ssize_t i
    try:
        for i in range(n):
            out[i] = seq[i]
    except OverflowError:
        return 1
    return 0


cdef tuple _normalize_c(long long *nums, Py_ssize_t n, long long den):
    cdef Py_ssize_t i
    cdef long long g
    cdef bint nonzero = False
    # LLONG_MIN cannot be negated; let the caller take the bignum path
    if den == LLMIN:
        return None
    for i in range(n):
        if nums[i] == LLMIN:
            return None
    if den < 0:
        den = -den
        for i in range(n):
            nums[i] = -nums[i]
    g = den
    for i in range(n):
        if nums[i]:
            nonzero = True
            g = _gcd(g, nums[i])
    if not nonzero:
        return (tuple([0] * n), 1)
    if g > 1:
        for i in range(n):
            nums[i] //= g
        den //= g
    return (tuple([nums[i] for i in range(n)]), den)


cdef int _mulmod_c(long long *a, long long *b, long long *phi,
                   Py_ssize_t n, long long *out) nogil:
    """out[:n] = a*b mod Phi; return 1 on overflow."""
    cdef long long prod[2 * MAXN]
    cdef long long t
    cdef Py_ssize_t i, j, k, base
    for i in range(2 * n - 1):
        prod[i] = 0
    for i in range(n):
        if a[i] == 0:
            continue
        for j in range(n):
            if b[j] == 0:
                continue
            if rs_mul_ovf(a[i], b[j], &t):
                return 1
            if rs_add_ovf(prod[i + j], t, &prod[i + j]):
                return 1
    k = 2 * n - 2
    while k >= n:
        if prod[k]:
            base = k - n
            for j in range(n):
                if phi[j] == 0:
                    continue
                if rs_mul_ovf(prod[k], phi[j], &t):
                    return 1
                if rs_sub_ovf(prod[base + j], t, &prod[base + j]):
                    return 1
        k -= 1
    for i in range(n):
        out[i] = prod[i]
    return 0


def poly_mulmod(a, b, phi):
    cdef Py_ssize_t n = len(phi)
    cdef long long ca[MAXN]
    cdef long long cb[MAXN]
    cdef long long cp[MAXN]
    cdef long long out[MAXN]
    if n > MAXN or _load(a, ca, n) or _load(b, cb, n) or _load(phi, cp, n):
        return _py.poly_mulmod(a, b, phi)
    if _mulmod_c(ca, cb, cp, n, out):
        return _py.poly_mulmod(a, b, phi)
    return [out[i] for i in range(n)]


def normalize(nums, den):
    cdef Py_ssize_t n = len(nums)
    cdef long long cn[MAXN]
    cdef long long cd
    cdef tuple res
    if n > MAXN or _load(nums, cn, n):
        return _py.normalize(nums, den)
    try:
        cd = den
    except OverflowError:
        return _py.normalize(nums, den)
    res = _normalize_c(cn, n, cd)
    if res is None:
        return _py.normalize(nums, den)
    return res


def mul(an, ad, bn, bd, phi):
    cdef Py_ssize_t n = len(phi)
    cdef long long ca[MAXN]
    cdef long long cb[MAXN]
    cdef long long cp[MAXN]
    cdef long long out[MAXN]
    cdef long long cad, cbd, den
    cdef tuple res
    if n > MAXN or _load(an, ca, n) or _load(bn, cb, n) or _load(phi, cp, n):
        return _py.mul(an, ad, bn, bd, phi)
    try:
        cad = ad
        cbd = bd
    except OverflowError:
        return _py.mul(an, ad, bn, bd, phi)
    if rs_mul_ovf(cad, cbd, &den) or _mulmod_c(ca, cb, cp, n, out):
        return _py.mul(an, ad, bn, bd, phi)
    res = _normalize_c(out, n, den)
    if res is None:
        return _py.mul(an, ad, bn, bd, phi)
    return res


cdef int _combine(long long *x, long long xd, long long *y, long long yd,
                  Py_ssize_t n, long long *out, long long *outd) nogil:
    """out/outd = x/xd + y/yd; return 1 on overflow."""
    cdef Py_ssize_t i
    cdef long long s, t
    if xd == yd:
        for i in range(n):
            if rs_add_ovf(x[i], y[i], &out[i]):
                return 1
        outd[0] = xd
        return 0
    for i in range(n):
        if rs_mul_ovf(x[i], yd, &s) or rs_mul_ovf(y[i], xd, &t):
            return 1
        if rs_add_ovf(s, t, &out[i]):
            return 1
    if rs_mul_ovf(xd, yd, outd):
        return 1
    return 0


def add(an, ad, bn, bd):
    cdef Py_ssize_t n = len(an)
    cdef long long ca[MAXN]
    cdef long long cb[MAXN]
    cdef long long out[MAXN]
    cdef long long cad, cbd, od
    cdef tuple res
    if n > MAXN or _load(an, ca, n) or _load(bn, cb, n):
        return _py.add(an, ad, bn, bd)
    try:
        cad = ad
        cbd = bd
    except OverflowError:
        return _py.add(an, ad, bn, bd)
    if _combine(ca, cad, cb, cbd, n, out, &od):
        return _py.add(an, ad, bn, bd)
    res = _normalize_c(out, n, od)
    if res is None:
        return _py.add(an, ad, bn, bd)
    return res


def fma(cn, cd, an, ad, bn, bd, phi):
    cdef Py_ssize_t n = len(phi)
    cdef long long cc[MAXN]
    cdef long long ca[MAXN]
    cdef long long cb[MAXN]
    cdef long long cp[MAXN]
    cdef long long prod[MAXN]
    cdef long long out[MAXN]
    cdef long long ccd, cad, cbd, pd, od
    cdef tuple res
    if (n > MAXN or _load(cn, cc, n) or _load(an, ca, n)
            or _load(bn, cb, n) or _load(phi, cp, n)):
        return _py.fma(cn, cd, an, ad, bn, bd, phi)
    try:
        ccd = cd
        cad = ad
        cbd = bd
    except OverflowError:
        return _py.fma(cn, cd, an, ad, bn, bd, phi)
    if (rs_mul_ovf(cad, cbd, &pd) or _mulmod_c(ca, cb, cp, n, prod)
            or _combine(cc, ccd, prod, pd, n, out, &od)):
        return _py.fma(cn, cd, an, ad, bn, bd, phi)
    res = _normalize_c(out, n, od)
    if res is None:
        return _py.fma(cn, cd, an, ad, bn, bd, phi)
    return res
