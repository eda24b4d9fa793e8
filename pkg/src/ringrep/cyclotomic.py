"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are rational coefficient vectors on the power basis
1, z, ..., z^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial.
Mixed-conductor arithmetic promotes both sides to the lcm.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _polydiv_exact(num, den):
    """num / den for integer polynomials (little-endian), den monic, remainder 0."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of Phi_n, little-endian."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly = _polydiv_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _mobius(n):
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


@lru_cache(maxsize=None)
def _power_traces(n: int) -> tuple:
    """Tr_{Q(zeta_n)/Q}(zeta_n^k) for k < n (Ramanujan sums)."""
    out = []
    for k in range(n):
        m = n // gcd(k, n)
        out.append(_mobius(m) * totient(n) // totient(m))
    return tuple(out)


def _reduce(full, n):
    """Reduce a length-n coefficient list (powers of zeta_n) modulo Phi_n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    a = list(full)
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            shift = i - deg
            for j in range(deg + 1):
                a[shift + j] -= c * phi[j]
    return tuple(a[:deg])


class Cyclotomic:
    """An element of Q(zeta_N)."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs):
        self.N = N
        coeffs = tuple(Fraction(c) for c in coeffs)
        deg = totient(N)
        if len(coeffs) > deg:
            full = list(coeffs) + [0] * (-len(coeffs) % N)
            folded = [Fraction(0)] * N
            for i, c in enumerate(full):
                folded[i % N] += c
            coeffs = _reduce(folded, N)
        elif len(coeffs) < deg:
            coeffs = coeffs + (Fraction(0),) * (deg - len(coeffs))
        self.coeffs = coeffs

    @classmethod
    def rational(cls, x, N: int = 1) -> "Cyclotomic":
        return cls(N, [x])

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "Cyclotomic":
        k %= N
        full = [0] * N
        full[k] = 1
        return cls(N, _reduce(full, N))

    def promote(self, M: int) -> "Cyclotomic":
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot embed Q(zeta_{self.N}) into Q(zeta_{M})")
        step = M // self.N
        full = [Fraction(0)] * M
        for i, c in enumerate(self.coeffs):
            if c:
                full[i * step] += c
        return Cyclotomic(M, _reduce(full, M))

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(self.N, [other])
        if not isinstance(other, Cyclotomic):
            return None, None
        M = lcm(self.N, other.N)
        return self.promote(M), other.promote(M)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.N, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.N, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.N, [x * other for x in self.coeffs])
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        N = a.N
        full = [Fraction(0)] * N
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        full[(i + j) % N] += x * y
        return Cyclotomic(N, _reduce(full, N))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.N, [x / other for x in self.coeffs])
        if isinstance(other, Cyclotomic) and other.is_rational():
            return self / other.coeffs[0]
        return NotImplemented

    def conjugate(self) -> "Cyclotomic":
        N = self.N
        full = [Fraction(0)] * N
        for i, c in enumerate(self.coeffs):
            if c:
                full[(-i) % N] += c
        return Cyclotomic(N, _reduce(full, N))

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k, gcd(k, N) = 1."""
        N = self.N
        full = [Fraction(0)] * N
        for i, c in enumerate(self.coeffs):
            if c:
                full[(i * k) % N] += c
        return Cyclotomic(N, _reduce(full, N))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def normalized_trace(self) -> Fraction:
        """Tr(x)/phi(N): independent of the conductor used to represent x."""
        traces = _power_traces(self.N)
        return sum((c * traces[i] for i, c in enumerate(self.coeffs)), Fraction(0)) / totient(self.N)

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(complex(float(c)) * z ** i for i, c in enumerate(self.coeffs))

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash(self.normalized_trace())

    def to_json(self) -> dict:
        return {"conductor": self.N, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, d) -> "Cyclotomic":
        return cls(d["conductor"], [Fraction(c) for c in d["coeffs"]])

    def __repr__(self):
        if self.is_rational():
            return f"Cyclotomic({self.coeffs[0]})"
        terms = [f"{c}*z{self.N}^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + " + ".join(terms) + ")"


ZERO = Cyclotomic(1, [0])
ONE = Cyclotomic(1, [1])
