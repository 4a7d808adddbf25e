"""Exact arithmetic in Q and in the cyclotomic fields Q(zeta_r).

Q(zeta_r) is modelled as Q[X]/Phi_r(X) with the power basis
{1, zeta, ..., zeta^(phi(r)-1)}.  Every value is kept in canonical reduced
form, so equality of elements is equality of coefficient vectors.

Rationals are plain :class:`fractions.Fraction` values (aliased as ``Rat``).
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache

from rspin import kernels

Rat = Fraction

__all__ = [
    "Rat",
    "CycQ",
    "ConductorMismatchError",
    "cyclotomic_polynomial",
    "totient",
    "root_of_unity",
    "as_cycq",
]


class ConductorMismatchError(ValueError):
    """Raised when two cyclotomic elements of different conductors meet."""


def _poly_divexact(num, den):
    """Exact division of integer polynomials (low-to-high coefficient lists)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q, rem = divmod(num[k + len(den) - 1], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        if q:
            for j, d in enumerate(den):
                num[k + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple[int, ...]:
    """Coefficients of Phi_r, lowest degree first."""
    if r < 1:
        raise ValueError(f"conductor must be positive, got {r}")
    poly = [-1] + [0] * (r - 1) + [1]  # X^r - 1
    for d in range(1, r):
        if r % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi_tail(r: int) -> tuple[int, ...]:
    return cyclotomic_polynomial(r)[:-1]


def totient(r: int) -> int:
    return len(cyclotomic_polynomial(r)) - 1


def _reduce_int_poly(poly, r):
    """Reduce an integer polynomial of any length modulo Phi_r."""
    tail = _phi_tail(r)
    n = len(tail)
    poly = list(poly) + [0] * max(0, n - len(poly))
    for k in range(len(poly) - 1, n - 1, -1):
        c = poly[k]
        if c:
            base = k - n
            for j, p in enumerate(tail):
                if p:
                    poly[base + j] -= c * p
    return poly[:n]


class CycQ:
    """An element of Q(zeta_r), stored as integer numerators over one denominator.

    >>> z = root_of_unity(4, 1)
    >>> (1 + z) * (1 - z)
    CycQ(4, '2')
    """

    __slots__ = ("r", "_num", "_den", "_hash")

    def __init__(self, r: int, coeffs=(0,)):
        """Build from rational coefficients of any length; reduces mod Phi_r."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        num, den = kernels.normalize(_reduce_int_poly(ints, r), den)
        self.r = r
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, r, num, den):
        obj = object.__new__(cls)
        obj.r = r
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, r: int) -> "CycQ":
        return _zero(r)

    @classmethod
    def one(cls, r: int) -> "CycQ":
        return _one(r)

    @classmethod
    def from_rational(cls, r: int, q) -> "CycQ":
        q = Fraction(q)
        n = totient(r)
        return cls._raw(r, (q.numerator,) + (0,) * (n - 1), q.denominator)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def __bool__(self):
        return any(self._num)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycQ):
            if other.r != self.r:
                if other.is_rational():
                    return CycQ.from_rational(self.r, other.to_rational())
                if self.is_rational():
                    return NotImplemented
                raise ConductorMismatchError(
                    f"conductors differ: {self.r} and {other.r}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycQ.from_rational(self.r, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        num, den = kernels.add(self._num, self._den, other._num, other._den)
        return CycQ._raw(self.r, num, den)

    __radd__ = __add__

    def __neg__(self):
        return CycQ._raw(self.r, tuple(-x for x in self._num), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if other.__class__ is not CycQ or other.r != self.r:
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        # multiplying by the cached unit is common inside structure maps
        one = _one(self.r)
        if other is one:
            return self
        if self is one:
            return other
        num, den = kernels.mul(self._num, self._den, other._num, other._den,
                               _phi_tail(self.r))
        return CycQ._raw(self.r, num, den)

    __rmul__ = __mul__

    def fma(self, a: "CycQ", b: "CycQ") -> "CycQ":
        """Return ``self + a*b`` in one kernel call (all three share r)."""
        num, den = kernels.fma(self._num, self._den, a._num, a._den,
                               b._num, b._den, _phi_tail(self.r))
        return CycQ._raw(self.r, num, den)

    def inv(self) -> "CycQ":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_r)")
        if self.is_rational():
            return CycQ.from_rational(self.r, 1 / self.to_rational())
        # extended Euclid in Q[X]: s*a + t*Phi = 1
        a = list(self.coeffs)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.r)]
        s = _poly_inverse_mod(a, phi)
        return CycQ(self.r, s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        k = abs(k)
        result = CycQ.one(self.r)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CycQ):
            if other.r != self.r:
                if self.is_rational() and other.is_rational():
                    return self.to_rational() == other.to_rational()
                return False
            return self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.r, self._num, self._den))
        return self._hash

    # -- change of field --------------------------------------------------

    def lift(self, r: int) -> "CycQ":
        """Image under Q(zeta_s) -> Q(zeta_r), zeta_s -> zeta_r^(r/s), for s | r."""
        if r == self.r:
            return self
        if r % self.r:
            raise ConductorMismatchError(f"{self.r} does not divide {r}")
        step = r // self.r
        poly = [0] * (step * (len(self._num) - 1) + 1)
        for k, c in enumerate(self._num):
            poly[k * step] = c
        num, den = kernels.normalize(_reduce_int_poly(poly, r), self._den)
        return CycQ._raw(r, num, den)

    def approx(self, embedding: int = 1) -> complex:
        """Floating value under zeta_r -> exp(2 pi i k / r); display only."""
        if math.gcd(embedding, self.r) != 1:
            raise ValueError(
                f"embedding {embedding} is not coprime to conductor {self.r}")
        w = cmath.exp(2j * math.pi * embedding / self.r)
        total = 0j
        for k, c in enumerate(self._num):
            if c:
                total += c * w ** k
        return total / self._den

    # -- text and serialization -------------------------------------------

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"CycQ({self.r}, {str(self)!r})"

    def to_json(self) -> dict:
        return {"r": self.r, "coeffs": [_fmt_rat(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CycQ":
        r = int(obj["r"])
        coeffs = [Fraction(c) for c in obj["coeffs"]]
        if len(coeffs) != totient(r):
            raise ValueError(
                f"expected {totient(r)} coefficients for r={r}, got {len(coeffs)}")
        return cls(r, coeffs)

    @classmethod
    def parse(cls, text: str, r: int = 1) -> "CycQ":
        """Parse a polynomial in ``z`` (standing for zeta_r) with rational coefficients."""
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty cyclotomic expression")
        if src[0] not in "+-":
            src = "+" + src
        poly: dict[int, Fraction] = {}
        pos = 0
        for m in _TERM_RE.finditer(src):
            if m.start() != pos:
                break
            pos = m.end()
            sign, coef, mono, power = m.group("sign", "coef", "mono", "pow")
            if coef is None and mono is None:
                raise ValueError(f"malformed term in {text!r}")
            c = Fraction(coef) if coef else Fraction(1)
            k = 0
            if mono:
                k = int(power) if power else 1
            poly[k] = poly.get(k, Fraction(0)) + (-c if sign == "-" else c)
        if pos != len(src):
            raise ValueError(f"cannot parse {text!r} near position {pos + 1}")
        if poly and min(poly) < 0:
            raise ValueError("negative powers of z are not accepted")
        if any(k > 0 for k, c in poly.items() if c) and r == 1:
            pass  # z = 1 when r = 1
        size = max(poly, default=0) + 1
        coeffs = [poly.get(k, Fraction(0)) for k in range(size)]
        return cls(r, coeffs)


@lru_cache(maxsize=None)
def _zero(r):
    return CycQ._raw(r, (0,) * totient(r), 1)


@lru_cache(maxsize=None)
def _one(r):
    return CycQ.from_rational(r, 1)


_TERM_RE = re.compile(
    r"(?P<sign>[+-])(?P<coef>\d+(?:/\d+)?)?(?:\*?(?P<mono>z)(?:\^(?P<pow>\d+))?)?")


def _fmt_rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], _poly_trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, d in enumerate(b):
                a[k + j] -= c * d
    return q, _poly_trim(a[: len(b) - 1] or [Fraction(0)])


def _poly_sub_mul(a, q, b):
    """a - q*b."""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(b):
                out[i + j] -= x * y
    return _poly_trim(out)


def _poly_inverse_mod(a, m):
    """Inverse of a modulo m in Q[X] by the extended Euclidean algorithm."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1 != [0]:
        q, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    return [c / r0[0] for c in s0]


def root_of_unity(r: int, k: int = 1) -> CycQ:
    """zeta_r^k, reduced modulo Phi_r."""
    if r < 1:
        raise ValueError(f"conductor must be positive, got {r}")
    k %= r
    return CycQ(r, [0] * k + [1])


def as_cycq(value, r: int) -> CycQ:
    """Coerce an int, Fraction or CycQ (of a dividing conductor) into Q(zeta_r)."""
    if isinstance(value, CycQ):
        if value.r == r:
            return value
        if value.is_rational():
            return CycQ.from_rational(r, value.to_rational())
        return value.lift(r)
    return CycQ.from_rational(r, value)
