"""Finite field towers F_{p^K} with table-driven arithmetic.

Elements are plain ints in ``range(p**K)``: the base-p digits of the int
(little-endian) are the coefficients of the element as a polynomial in the
generator of the modulus.  The prime field is therefore ``range(p)`` in every
tower, which lets matrices over F_p move freely between towers.

Multiplication and addition go through log / antilog / Zech tables, so
every operation is a few list lookups.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

MAX_DEGREE = 16
MAX_TABLE = 1 << 22


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomial helpers over F_p (coefficient lists, little-endian) --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(_trim(a)) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _polymul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _monic_polys(p, d):
    """All monic polynomials of degree d, in lexicographic order of the lower coefficients."""
    for n in range(p ** d):
        coeffs = []
        for _ in range(d):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for m in _monic_polys(p, d):
            if not _trim(_polymod(poly, m, p)):
                return False
    return True


def least_irreducible(p: int, K: int) -> tuple[int, ...]:
    for poly in _monic_polys(p, K):
        if K == 1 or is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldTower:
    """The field F_{p^K}, holding every subfield F_{p^d} with d | K.

    Immutable after construction; all arithmetic methods take and return ints.
    """

    def __init__(self, p: int, K: int):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if not 1 <= K <= MAX_DEGREE:
            raise ValueError(f"degree K={K} outside [1, {MAX_DEGREE}]")
        if p ** K > MAX_TABLE:
            raise ValueError(f"field of size {p}^{K} exceeds the table budget")
        self.p = p
        self.K = K
        self.size = p ** K
        self.order = self.size - 1  # of the multiplicative group
        self.modulus = least_irreducible(p, K)
        self._build_tables()

    # -- construction --

    def _digits(self, x):
        p = self.p
        out = []
        for _ in range(self.K):
            out.append(x % p)
            x //= p
        return out

    def _from_digits(self, ds):
        x = 0
        for d in reversed(ds[: self.K]):
            x = x * self.p + d
        return x

    def _poly_mul_int(self, x, y):
        prod = _polymul(self._digits(x), self._digits(y), self.p)
        return self._from_digits(_polymod(prod, self.modulus, self.p) + [0] * self.K)

    def _poly_pow_int(self, x, e):
        result, base = 1, x
        while e:
            if e & 1:
                result = self._poly_mul_int(result, base)
            base = self._poly_mul_int(base, base)
            e >>= 1
        return result

    def _is_primitive(self, g):
        if g == 0:
            return False
        if self.order == 1:
            return g == 1
        return all(self._poly_pow_int(g, self.order // l) != 1 for l in prime_factors(self.order))

    def _build_tables(self):
        p, K, N = self.p, self.K, self.order
        g = next(x for x in range(1, self.size) if self._is_primitive(x))
        self.generator = g
        X = p if K > 1 else g
        if K > 1 and self._is_primitive(X):
            exp = self._powers_of_x()
        else:
            exp = self._powers_slow(g)
        log = [-1] * self.size
        for n, x in enumerate(exp):
            log[x] = n
        if N > 1 and exp[1] != g:
            # re-base the tables from X to the canonical generator g
            exp = [exp[(n * log[g]) % N] for n in range(N)]
            for n, x in enumerate(exp):
                log[x] = n
        self._exp = exp
        self._log = log
        # x + 1 only touches the lowest digit
        zech = [-1] * N
        for n in range(N):
            x = exp[n]
            s = x - (p - 1) if x % p == p - 1 else x + 1
            zech[n] = log[s]
        self._zech = zech

    def _powers_of_x(self):
        """exp table for the generator X: multiplying by X is a digit shift plus a sparse correction."""
        p, K, N = self.p, self.K, self.order
        top_place = p ** (K - 1)
        places = [(p ** j, (-c) % p) for j, c in enumerate(self.modulus[:-1]) if c]
        exp = [0] * N
        x = 1
        for n in range(N):
            exp[n] = x
            top = x // top_place
            x = (x - top * top_place) * p
            if top:
                for place, c in places:
                    d = (x // place) % p
                    x += (((d + top * c) % p) - d) * place
        return exp

    def _powers_slow(self, g):
        """exp table for a generic generator.

        Digits are packed one per byte, so multiplication by g is a sum of K
        packed images followed by a byte-wise reduction mod p.
        """
        p, K, N = self.p, self.K, self.order
        if K * (p - 1) ** 2 > 255:
            return self._powers_digits(g)
        images = []
        for i in range(K):
            ds = self._digits(self._poly_mul_int(g, p ** i))
            images.append(int.from_bytes(bytes(ds), "little"))
        mod_p = bytes(v % p for v in range(256))
        half = (K + 1) // 2
        low_digits = {}
        for v in range(p ** half):
            low_digits[bytes(self._digits(v)[:half])] = v
        shift = p ** half
        exp = [0] * N
        cur = bytes([1] + [0] * (K - 1))
        for n in range(N):
            exp[n] = low_digits[cur[:half]] + shift * low_digits[cur[half:] + bytes(2 * half - K)]
            acc = 0
            for c, img in zip(cur, images):
                if c:
                    acc += c * img
            cur = acc.to_bytes(K, "little").translate(mod_p)
        return exp

    def _powers_digits(self, g):
        p, K, N = self.p, self.K, self.order
        basis_images = [self._digits(self._poly_mul_int(g, p ** i)) for i in range(K)]
        exp = [0] * N
        cur = [1] + [0] * (K - 1)
        for n in range(N):
            exp[n] = self._from_digits(cur)
            nxt = [0] * K
            for i, c in enumerate(cur):
                if c:
                    for j, v in enumerate(basis_images[i]):
                        nxt[j] += c * v
            cur = [v % p for v in nxt]
        return exp

    def _add_slow(self, x, y):
        if self.p == 2:
            return x ^ y
        return self._from_digits([(a + b) % self.p for a, b in zip(self._digits(x), self._digits(y))])

    # -- arithmetic on ints --

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if x == 0:
            return y
        if y == 0:
            return x
        lx = self._log[x]
        z = self._zech[(self._log[y] - lx) % self.order]
        if z < 0:
            return 0
        return self._exp[(lx + z) % self.order]

    def neg(self, x: int) -> int:
        if x == 0 or self.p == 2:
            return x
        # -1 = g^(N/2) for odd p
        return self._exp[(self._log[x] + self.order // 2) % self.order]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % self.order]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._exp[(-self._log[x]) % self.order]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % self.order]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of 0")
        return self._log[x]

    def exp(self, n: int) -> int:
        return self._exp[n % self.order]

    # -- subfields and Frobenius --

    def has_subfield(self, q: int) -> bool:
        d = self.degree_of(q)
        return d is not None and self.K % d == 0

    def degree_of(self, q: int):
        d, v = 0, 1
        while v < q:
            v *= self.p
            d += 1
        return d if v == q and d >= 1 else None

    def frob(self, x: int, q: int) -> int:
        """x ** q for q a subfield order."""
        if x == 0:
            return 0
        return self._exp[(self._log[x] * q) % self.order]

    def in_subfield(self, x: int, q: int) -> bool:
        if x == 0:
            return True
        return self._log[x] % (self.order // (q - 1)) == 0

    def subfield(self, q: int) -> list[int]:
        """Elements of F_q inside this tower, sorted by encoding."""
        if not self.has_subfield(q):
            raise ValueError(f"F_{q} is not a subfield of F_{self.p}^{self.K}")
        step = self.order // (q - 1)
        return sorted([0] + [self._exp[i] for i in range(0, self.order, step)])

    def elements(self) -> range:
        return range(self.size)

    def encode(self, x: int) -> bytes:
        return bytes(self._digits(x))

    def element(self, x) -> "FieldElement":
        return FieldElement(self, x)

    def __repr__(self):
        return f"FieldTower(p={self.p}, K={self.K})"


@lru_cache(maxsize=None)
def make_tower(p: int, K: int) -> FieldTower:
    return FieldTower(p, K)


def field_for(q: int, degree: int) -> FieldTower:
    """The tower F_{q^degree} for a prime power q."""
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    p = prime_factors(q)[0]
    d = 0
    v = 1
    while v < q:
        v *= p
        d += 1
    return make_tower(p, d * degree)


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    fs = prime_factors(q)
    return len(fs) == 1


class FieldElement:
    """A field element bound to its tower, with operator overloading."""

    __slots__ = ("tower", "value")

    def __init__(self, tower: FieldTower, value: int):
        self.tower = tower
        self.value = value % tower.size if value >= 0 else tower.from_int(value)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower is not self.tower:
                raise ValueError("elements of different towers")
            return other.value
        if isinstance(other, int):
            return self.tower.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.tower, self.tower.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.tower, self.tower.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.tower, self.tower.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.tower, self.tower.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.tower, self.tower.div(self.value, o))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.tower, self.tower.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.tower is other.tower and self.value == other.value
        if isinstance(other, int):
            return self.value == self.tower.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.tower.p, self.tower.K, self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self) -> list[int]:
        return self.tower._digits(self.value)

    def encode(self) -> bytes:
        return self.tower.encode(self.value)

    def __repr__(self):
        return f"F{self.tower.p}^{self.tower.K}({self.coeffs})"


def frobenius(x: FieldElement, q: int) -> FieldElement:
    """x -> x**q, a field automorphism fixing exactly F_q."""
    if not x.tower.has_subfield(q):
        raise ValueError(f"{q} is not the order of a subfield of {x.tower}")
    return FieldElement(x.tower, x.tower.frob(x.value, q))
