"""Truncated polynomial rings F_{q^m}[eps]/(eps^r).

A ring element is a tuple of r field ints, index i holding the coefficient
of eps^i.  :class:`TruncRing` carries the arithmetic; :class:`RingElement`
wraps a tuple for interactive use.
"""

from __future__ import annotations

from itertools import product

from ringrep.gfield import FieldTower


class TruncRing:
    """F_{q^m}[eps]/(eps^r) with coefficients taken inside ``tower``."""

    def __init__(self, tower: FieldTower, r: int, q: int, m: int = 1):
        if r < 1:
            raise ValueError("truncation length r must be >= 1")
        if not tower.has_subfield(q ** m):
            raise ValueError(f"F_{q}^{m} is not a subfield of {tower}")
        self.tower = tower
        self.r = r
        self.q = q
        self.m = m
        self.coeff_order = q ** m
        self.zero = (0,) * r
        self.one = (1,) + (0,) * (r - 1)
        self.eps = (0, 1) + (0,) * (r - 2) if r >= 2 else self.zero

    def __repr__(self):
        return f"TruncRing(F_{self.q}^{self.m}[eps]/eps^{self.r})"

    def __eq__(self, other):
        return (
            isinstance(other, TruncRing)
            and self.tower is other.tower
            and (self.r, self.q, self.m) == (other.r, other.q, other.m)
        )

    def __hash__(self):
        return hash((id(self.tower), self.r, self.q, self.m))

    @property
    def size(self) -> int:
        return self.coeff_order ** self.r

    # -- arithmetic on tuples --

    def const(self, c: int) -> tuple:
        return (c,) + (0,) * (self.r - 1)

    def add(self, x, y):
        add = self.tower.add
        return tuple(add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        sub = self.tower.sub
        return tuple(sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        neg = self.tower.neg
        return tuple(neg(a) for a in x)

    def mul(self, x, y):
        F = self.tower
        r = self.r
        if r == 1:
            return (F.mul(x[0], y[0]),)
        out = [0] * r
        for i, a in enumerate(x):
            if a:
                for j in range(r - i):
                    b = y[j]
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return tuple(out)

    def scale(self, c: int, x):
        mul = self.tower.mul
        return tuple(mul(c, a) for a in x)

    def is_unit(self, x) -> bool:
        return x[0] != 0

    def inv(self, x):
        """Inverse of a unit by Newton iteration on the eps-expansion."""
        F = self.tower
        if x[0] == 0:
            raise ZeroDivisionError("non-unit in truncated ring")
        a0inv = F.inv(x[0])
        out = [a0inv] + [0] * (self.r - 1)
        # out_k = -a0^{-1} * sum_{i=1..k} x_i out_{k-i}
        for k in range(1, self.r):
            s = 0
            for i in range(1, k + 1):
                s = F.add(s, F.mul(x[i], out[k - i]))
            out[k] = F.neg(F.mul(a0inv, s))
        return tuple(out)

    def pow(self, x, e: int):
        if e < 0:
            x, e = self.inv(x), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def valuation(self, x) -> int:
        for i, a in enumerate(x):
            if a:
                return i
        return self.r

    def reduce(self, x, r2: int):
        if not 0 <= r2 <= self.r:
            raise ValueError(f"cannot reduce length {self.r} to {r2}")
        return tuple(x[:r2])

    def frobenius(self, x, power: int = 1):
        """Apply a -> a^q coefficientwise ``power`` times."""
        F = self.tower
        Q = self.q ** power
        return tuple(F.frob(a, Q) for a in x)

    def is_frobenius_fixed(self, x) -> bool:
        return all(self.tower.in_subfield(a, self.q) for a in x)

    def coefficient_field(self) -> list[int]:
        return self.tower.subfield(self.coeff_order)

    def elements(self):
        """All ring elements, ordered by canonical encoding."""
        coeffs = self.coefficient_field()
        for tup in product(coeffs, repeat=self.r):
            yield tuple(reversed(tup))

    def units(self):
        for x in self.elements():
            if x[0]:
                yield x

    def fixed_subring(self) -> "TruncRing":
        """The ring F_q[eps]/(eps^r) of Frobenius-fixed elements."""
        return TruncRing(self.tower, self.r, self.q, 1)

    def element(self, coeffs) -> "RingElement":
        return RingElement(self, tuple(coeffs))


class RingElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: TruncRing, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != ring.r:
            raise ValueError(f"expected {ring.r} coefficients")
        self.ring = ring
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other.coeffs
        if isinstance(other, int):
            return self.ring.const(self.ring.tower.from_int(other))
        return NotImplemented

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.coeffs, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.coeffs, self._other(other)))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.coeffs))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.coeffs, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, e):
        return RingElement(self.ring, self.ring.pow(self.coeffs, e))

    def inverse(self):
        return RingElement(self.ring, self.ring.inv(self.coeffs))

    def is_unit(self):
        return self.ring.is_unit(self.coeffs)

    @property
    def valuation(self) -> int:
        return self.ring.valuation(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RingElement({list(self.coeffs)})"


def reduce(x: RingElement, r2: int) -> RingElement:
    """Image of x under F[eps]/eps^r -> F[eps]/eps^r2."""
    R = x.ring
    target = TruncRing(R.tower, r2, R.q, R.m) if r2 >= 1 else None
    coeffs = R.reduce(x.coeffs, r2)
    if target is None:
        # length 0: the zero ring, represented by an empty tuple
        return _ZeroRingElement()
    return RingElement(target, coeffs)


class _ZeroRingElement(RingElement):
    __slots__ = ()

    def __init__(self):  # noqa: D401 - the zero ring has one element
        self.ring = None
        self.coeffs = ()

    def __eq__(self, other):
        return isinstance(other, _ZeroRingElement)

    def __hash__(self):
        return 0

    def __repr__(self):
        return "RingElement([])"


def ring_frobenius(x: RingElement) -> RingElement:
    return RingElement(x.ring, x.ring.frobenius(x.coeffs))


def units(R: TruncRing):
    for x in R.units():
        yield RingElement(R, x)
