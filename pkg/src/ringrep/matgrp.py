"""SL_n (n = 2, 3) over truncated rings.

A matrix is stored as a tuple of n*n ring tuples in row-major order; this
raw form is hashable and is what the hot loops use.  :class:`GroupElement`
wraps it with operators.

Besides arithmetic this module covers the congruence filtration
G_r^i = ker(G_r -> G_i), root subgroups of type A_{n-1}, and the
commutator decompositions used in the structural lemmas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from ringrep.gfield import make_tower
from ringrep.trunc import TruncRing

SCAN_BUDGET = 10**9
ORDER_BUDGET = 10**6


# -- raw matrix arithmetic ----------------------------------------------------

def identity(R: TruncRing, n: int):
    return tuple(R.one if i == j else R.zero for i in range(n) for j in range(n))


def mat_mul(R: TruncRing, n: int, A, B):
    add, mul = R.add, R.mul
    zero = R.zero
    out = []
    for i in range(n):
        row = A[i * n:(i + 1) * n]
        for j in range(n):
            s = zero
            for k in range(n):
                a = row[k]
                if a != zero:
                    b = B[k * n + j]
                    if b != zero:
                        s = add(s, mul(a, b))
            out.append(s)
    return tuple(out)


def mat_det(R: TruncRing, n: int, A):
    mul, sub, add = R.mul, R.sub, R.add
    if n == 1:
        return A[0]
    if n == 2:
        return sub(mul(A[0], A[3]), mul(A[1], A[2]))
    if n == 3:
        a, b, c, d, e, f, g, h, i = A
        t1 = mul(a, sub(mul(e, i), mul(f, h)))
        t2 = mul(b, sub(mul(d, i), mul(f, g)))
        t3 = mul(c, sub(mul(d, h), mul(e, g)))
        return add(sub(t1, t2), t3)
    raise ValueError("only n <= 3 supported")


def mat_adj(R: TruncRing, n: int, A):
    mul, sub, neg = R.mul, R.sub, R.neg
    if n == 1:
        return (R.one,)
    if n == 2:
        a, b, c, d = A
        return (d, neg(b), neg(c), a)
    if n == 3:
        a, b, c, d, e, f, g, h, i = A
        return (
            sub(mul(e, i), mul(f, h)), sub(mul(c, h), mul(b, i)), sub(mul(b, f), mul(c, e)),
            sub(mul(f, g), mul(d, i)), sub(mul(a, i), mul(c, g)), sub(mul(c, d), mul(a, f)),
            sub(mul(d, h), mul(e, g)), sub(mul(b, g), mul(a, h)), sub(mul(a, e), mul(b, d)),
        )
    raise ValueError("only n <= 3 supported")


def mat_inv(R: TruncRing, n: int, A):
    adj = mat_adj(R, n, A)
    det = mat_det(R, n, A)
    if det == R.one:
        return adj
    dinv = R.inv(det)
    return tuple(R.mul(dinv, x) for x in adj)


def mat_frob(R: TruncRing, A, power: int = 1):
    return tuple(R.frobenius(x, power) for x in A)


def mat_reduce(A, r2: int):
    return tuple(x[:r2] for x in A)


def mat_level(R: TruncRing, n: int, A) -> int:
    """Largest i <= r with A = 1 mod eps^i."""
    level = R.r
    for i in range(n):
        for j in range(n):
            x = A[i * n + j]
            if i == j:
                x = R.sub(x, R.one)
            v = R.valuation(x)
            if v < level:
                level = v
                if level == 0:
                    return 0
    return level


def encode_raw(A) -> bytes:
    return bytes(c for x in A for c in x)


# -- group elements -----------------------------------------------------------

class GroupElement:
    """An n x n matrix of determinant 1 over a truncated ring."""

    __slots__ = ("ring", "n", "raw")

    def __init__(self, ring: TruncRing, n: int, raw, check: bool = True):
        raw = tuple(tuple(x) for x in raw)
        if len(raw) != n * n:
            raise ValueError(f"expected {n * n} entries")
        if check and mat_det(ring, n, raw) != ring.one:
            raise ValueError("matrix does not have determinant 1")
        self.ring = ring
        self.n = n
        self.raw = raw

    @classmethod
    def from_rows(cls, ring: TruncRing, rows, check: bool = True):
        n = len(rows)
        flat = []
        for row in rows:
            for x in row:
                if isinstance(x, int):
                    x = ring.const(ring.tower.from_int(x))
                flat.append(tuple(x) + (0,) * (ring.r - len(x)))
        return cls(ring, n, flat, check)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.ring, self.n, mat_mul(self.ring, self.n, self.raw, other.raw), check=False)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.ring, self.n, mat_inv(self.ring, self.n, self.raw), check=False)

    def __pow__(self, e: int) -> "GroupElement":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = GroupElement(self.ring, self.n, identity(self.ring, self.n), check=False)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, power: int = 1) -> "GroupElement":
        return GroupElement(self.ring, self.n, mat_frob(self.ring, self.raw, power), check=False)

    def reduce(self, r2: int) -> "GroupElement":
        R2 = TruncRing(self.ring.tower, r2, self.ring.q, self.ring.m)
        return GroupElement(R2, self.n, mat_reduce(self.raw, r2), check=False)

    def is_identity(self) -> bool:
        return self.raw == identity(self.ring, self.n)

    def entry(self, i: int, j: int):
        return self.raw[i * self.n + j]

    def encode(self) -> bytes:
        return encode_raw(self.raw)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.raw == other.raw

    def __hash__(self):
        return hash(self.raw)

    def __lt__(self, other):
        return self.encode() < other.encode()

    def __repr__(self):
        rows = [[list(self.raw[i * self.n + j]) for j in range(self.n)] for i in range(self.n)]
        return f"GroupElement({rows})"


def fixed_ring(q: int, r: int, tower=None) -> TruncRing:
    """F_q[eps]/(eps^r) for prime q, inside ``tower`` (default: the prime field)."""
    if tower is None:
        tower = make_tower(q, 1)
    return TruncRing(tower, r, q, 1)


def enumerate_sl_fixed(n: int, q: int, r: int, tower=None) -> list[GroupElement]:
    """All of SL_n(F_q[eps]/eps^r), sorted by canonical encoding.

    Every element factors uniquely as (constant matrix in SL_n(F_q)) times
    (element of the kernel of reduction to level 1), so the scan visits
    q^(n^2) constant matrices plus q^((r-1) n^2) kernel candidates.
    """
    if n not in (2, 3):
        raise ValueError("n must be 2 or 3")
    if (q ** r) ** (n * n) > SCAN_BUDGET:
        raise ValueError(f"scan budget exceeded for n={n}, q={q}, r={r}")
    order = q ** ((n * n - 1) * (r - 1)) * sl_order(n, q)
    if order > ORDER_BUDGET:
        raise ValueError(f"|SL_{n}(F_{q}[eps]/eps^{r})| = {order} exceeds the enumeration budget")
    R = fixed_ring(q, r, tower)
    F = R.tower
    fq = F.subfield(q)
    consts = []
    for vals in product(fq, repeat=n * n):
        A = tuple(R.const(v) for v in vals)
        if mat_det(R, n, A) == R.one:
            consts.append(A)
    kernel = []
    if r == 1:
        kernel = [identity(R, n)]
    else:
        one = identity(R, n)
        for vals in product(fq, repeat=n * n * (r - 1)):
            A = []
            for idx in range(n * n):
                tail = vals[idx * (r - 1):(idx + 1) * (r - 1)]
                A.append(R.add(one[idx], (0,) + tail))
            A = tuple(A)
            if mat_det(R, n, A) == R.one:
                kernel.append(A)
    raws = {mat_mul(R, n, s, k) for s in consts for k in kernel}
    out = [GroupElement(R, n, A, check=False) for A in raws]
    out.sort(key=GroupElement.encode)
    return out


def sl_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for k in range(2, n + 1):
        out *= q ** k - 1
    return out


def stratum_index(g: GroupElement) -> int:
    """The i with g in G_r^i minus G_r^(i+1); r for the identity."""
    return mat_level(g.ring, g.n, g.raw)


# -- roots --------------------------------------------------------------------

Root = tuple  # (i, j), i != j, 0-based


def root_mul(alpha: Root, beta: Root):
    """The product alpha*beta of roots as characters: a root, 1, or None."""
    (i, j), (k, l) = alpha, beta
    if (k, l) == (j, i):
        return 1
    if j == k and i != l:
        return (i, l)
    if l == i and k != j:
        return (k, j)
    return None


def root_inverse(alpha: Root) -> Root:
    return (alpha[1], alpha[0])


@dataclass
class RootSystem:
    """Type A_{n-1} roots with the positive system {(i, j): i < j}."""

    n: int
    ring: TruncRing
    order: list = field(default=None)

    def __post_init__(self):
        if self.order is None:
            self.order = sorted(self.positive)

    @property
    def roots(self):
        return [(i, j) for i in range(self.n) for j in range(self.n) if i != j]

    @property
    def positive(self):
        return [(i, j) for i in range(self.n) for j in range(self.n) if i < j]

    @property
    def negative(self):
        return [(i, j) for i in range(self.n) for j in range(self.n) if i > j]

    def height(self, alpha: Root) -> int:
        i, j = alpha
        if i >= j:
            raise ValueError(f"height is defined on positive roots, got {alpha}")
        return j - i

    def x(self, alpha: Root, u) -> GroupElement:
        """Root element 1 + u E_alpha."""
        R, n = self.ring, self.n
        raw = list(identity(R, n))
        i, j = alpha
        raw[i * n + j] = tuple(u)
        return GroupElement(R, n, raw, check=False)

    def coroot(self, alpha: Root, t) -> GroupElement:
        """The element of T^alpha with t at position i and t^-1 at j."""
        R, n = self.ring, self.n
        raw = list(identity(R, n))
        i, j = alpha
        raw[i * n + i] = tuple(t)
        raw[j * n + j] = R.inv(tuple(t))
        return GroupElement(R, n, raw, check=False)

    def level_params(self, level: int):
        """Ring elements of valuation >= level, i.e. eps^level R."""
        R = self.ring
        for x in R.elements():
            if R.valuation(x) >= level:
                yield x

    def ct(self, alpha: Root) -> list[GroupElement]:
        """ct^alpha = level-(r-1) part of T^alpha."""
        R = self.ring
        if R.r < 2:
            raise ValueError("ct^alpha needs r >= 2")
        out = []
        for s in R.coefficient_field():
            t = list(R.one)
            t[R.r - 1] = s
            out.append(self.coroot(alpha, tuple(t)))
        return out

    def root_subgroup_level(self, alpha: Root, level: int) -> list[GroupElement]:
        return [self.x(alpha, u) for u in self.level_params(level)]

    def factor(self, g: GroupElement, order=None) -> dict:
        """Parameters u_beta with g = prod_beta x_beta(u_beta) in the given order.

        g must be unitriangular (upper for positive roots, lower for a
        negative order).  Raises ValueError if g is not such a product.
        """
        order = list(order or self.order)
        R, n = self.ring, self.n
        lower = all(i > j for i, j in order)
        key = (lambda b: b[0] - b[1]) if lower else (lambda b: b[1] - b[0])
        params = {b: R.zero for b in order}
        for h in sorted({key(b) for b in order}):
            current = self._product(params, order)
            for b in order:
                if key(b) == h:
                    i, j = b
                    params[b] = R.sub(g.raw[i * n + j], current.raw[i * n + j])
        if self._product(params, order) != g:
            raise ValueError("element is not a product of the given root subgroups")
        return params

    def _product(self, params, order):
        R, n = self.ring, self.n
        acc = identity(R, n)
        for b in order:
            if params[b] != R.zero:
                acc = mat_mul(R, n, acc, self.x(b, params[b]).raw)
        return GroupElement(R, n, acc, check=False)


# -- commutation calculus -----------------------------------------------------

@dataclass
class Certificate:
    case: str
    factors: list = field(default_factory=list)  # case b: [(root, param)]
    tau: GroupElement | None = None  # case c
    u: GroupElement | None = None  # case c


def _check_level(R, u, level, what):
    if R.valuation(tuple(u)) < level:
        raise ValueError(f"{what} is not in the level-{level} root subgroup")


def decompose_1_6(rs: RootSystem, alpha: Root, u, b: int, beta: Root, v, c: int) -> Certificate:
    """Commutation rule for x = x_alpha(u) in level b, x' = x_beta(v) in level c.

    (a) b + c >= r: x x' = x' x.
    (b) alpha*beta != 1: x x' = x' x prod u_gamma, gamma = alpha^i beta^i' roots, level b + c.
    (c) beta = alpha^-1, b + c >= r - 1, b + 2c >= r: x x' = x' x tau u with
        tau in ct^alpha and u in the level-(r-1) part of G^alpha.
    The returned certificate has been checked by exact multiplication.
    """
    R = rs.ring
    r = R.r
    if not (0 <= b <= r and 0 <= c <= r):
        raise ValueError("levels must lie in [0, r]")
    _check_level(R, u, b, "x")
    _check_level(R, v, c, "x'")
    x, x2 = rs.x(alpha, u), rs.x(beta, v)
    lhs = x * x2
    base = x2 * x
    prod_ab = root_mul(alpha, beta)
    if b + c >= r:
        if lhs != base:
            raise AssertionError("case (a) violated: elements do not commute")
        return Certificate("a")
    if prod_ab != 1:
        comm = base.inverse() * lhs
        factors = []
        if prod_ab is not None:
            gamma = prod_ab
            w = comm.entry(*gamma)
            factors.append((gamma, w))
        check = base
        for gamma, w in factors:
            if R.valuation(w) < b + c:
                raise AssertionError("case (b) factor below the expected level")
            check = check * rs.x(gamma, w)
        if check != lhs:
            raise AssertionError("case (b) decomposition not found")
        return Certificate("b", factors=factors)
    if b + c >= r - 1 and b + 2 * c >= r:
        m = base.inverse() * lhs
        i, j = alpha
        t = m.entry(i, i)
        tau = rs.coroot(alpha, t)
        rest = tau.inverse() * m
        w = rest.entry(i, j)
        uu = rs.x(alpha, w)
        if rest != uu:
            raise AssertionError("case (c) remainder is not in G^alpha")
        one = R.one
        if R.valuation(R.sub(t, one)) < r - 1 or R.valuation(w) < r - 1:
            raise AssertionError("case (c) factors are not at level r-1")
        if base * tau * uu != lhs:
            raise AssertionError("case (c) decomposition not found")
        return Certificate("c", tau=tau, u=uu)
    raise ValueError("no case of the commutation rule applies to these levels")


def solve_1_6c_exhaustive(rs: RootSystem, alpha: Root, u, beta: Root, v):
    """All (tau, u) in ct^alpha x (G^alpha)^(r-1) with x x' = x' x tau u (oracle)."""
    x, x2 = rs.x(alpha, u), rs.x(beta, v)
    lhs = x * x2
    base = x2 * x
    sols = []
    for tau in rs.ct(alpha):
        for w in rs.root_subgroup_level(alpha, rs.ring.r - 1):
            if base * tau * w == lhs:
                sols.append((tau, w))
    return sols


def unitriangular_level_ok(rs: RootSystem, z: GroupElement, a: int) -> bool:
    return stratum_index(z) >= a


def decompose_1_7(rs: RootSystem, alpha: Root, xi_param, a: int, z: GroupElement):
    """(tau, omega) with xi z = z xi tau omega, for xi = x_alpha(xi_param).

    alpha must be negative, a in [1, r-1], xi in level r-a-1, z upper
    unitriangular in level a whose factors of height > ht(alpha^-1) lie in
    level a+1.  omega lies in the level-(r-1) lower unitriangular group.
    """
    R, n = rs.ring, rs.n
    r = R.r
    if alpha not in rs.negative:
        raise ValueError("alpha must be a negative root")
    if not 1 <= a <= r - 1:
        raise ValueError("a must lie in [1, r-1]")
    _check_level(R, xi_param, r - a - 1, "xi")
    if stratum_index(z) < a:
        raise ValueError("z is not in level a")
    params = rs.factor(z)
    h0 = rs.height(root_inverse(alpha))
    for beta, w in params.items():
        if rs.height(beta) > h0 and R.valuation(w) < a + 1:
            raise ValueError(f"height condition fails at {beta}")
    xi = rs.x(alpha, xi_param)
    m = (z * xi).inverse() * (xi * z)
    i, j = alpha
    t = m.entry(i, i)
    tau = rs.coroot(alpha, t)
    omega = tau.inverse() * m
    if R.valuation(R.sub(t, R.one)) < r - 1:
        raise AssertionError("tau is not in ct^alpha")
    for p in range(n):
        for s in range(n):
            e = omega.entry(p, s)
            if p == s:
                ok = e == R.one
            elif p < s:
                ok = e == R.zero
            else:
                ok = R.valuation(e) >= r - 1
            if not ok:
                raise AssertionError("omega is not in the level-(r-1) lower unitriangular group")
    if z * xi * tau * omega != xi * z:
        raise AssertionError("decomposition identity failed")
    return tau, omega


def lower_level_group(rs: RootSystem, level: int) -> list[GroupElement]:
    """All lower unitriangular matrices with off-diagonal entries in eps^level R."""
    R, n = rs.ring, rs.n
    neg = rs.negative
    params = list(rs.level_params(level))
    out = []
    for vals in product(params, repeat=len(neg)):
        raw = list(identity(R, n))
        for (i, j), v in zip(neg, vals):
            raw[i * n + j] = v
        out.append(GroupElement(R, n, raw, check=False))
    return out


def partition_1_8(rs: RootSystem, z: GroupElement, phi_prime=None, order=None):
    """The cell (a, I_z) of z in Z_r^1 - {1}, Z the product of root groups in phi_prime."""
    R = rs.ring
    phi_prime = list(phi_prime or rs.positive)
    order = list(order or rs.order)
    if z.is_identity():
        raise ValueError("z must not be the identity")
    a = stratum_index(z)
    if a < 1:
        raise ValueError("z is not in level 1")
    params = rs.factor(z, order)
    for beta, w in params.items():
        if beta not in phi_prime and w != R.zero:
            raise ValueError("z is not in Z")
    vals = {beta: R.valuation(w) for beta, w in params.items()}
    I = frozenset(
        alpha
        for alpha in phi_prime
        if vals[alpha] == a
        and all(vals[beta] >= a + 1 for beta in rs.positive if rs.height(beta) > rs.height(alpha))
    )
    if not I:
        raise AssertionError("empty I_z")
    if len({rs.height(alpha) for alpha in I}) != 1:
        raise AssertionError("height is not constant on I_z")
    return a, I


def z_group(rs: RootSystem, level: int, phi_prime=None) -> list[GroupElement]:
    """Z_r^level for Z the product of the root groups in phi_prime."""
    phi_prime = list(phi_prime or rs.positive)
    params = list(rs.level_params(level))
    out = set()
    for vals in product(params, repeat=len(phi_prime)):
        g = rs._product(dict(zip(phi_prime, vals)), phi_prime)
        out.add(g)
    return sorted(out, key=GroupElement.encode)


def all_orders(rs: RootSystem):
    return [list(p) for p in permutations(rs.positive)]
