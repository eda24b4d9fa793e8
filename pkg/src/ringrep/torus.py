"""F-stable maximal tori of SL_2 over F_q[eps]/(eps^r).

The split torus is the diagonal one.  The non-split torus is
T = gamma D gamma^-1 for a constant gamma with gamma^-1 F(gamma) = nu, where
D is the diagonal torus and nu = [[0, -1], [1, 0]].  Its F-fixed points are
gamma diag(a, a^-1) gamma^-1 with a in F_{q^2}[eps]/eps^r and a F(a) = 1.

Computations over extensions happen in "frames": a field tower big enough to
hold both the relevant F^n-fixed points and gamma, with gamma re-chosen
inside that tower so that it conjugates D onto the same torus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd

from ringrep.charkit import FiniteGroup
from ringrep.cyclotomic import Cyclotomic, lcm
from ringrep.gfield import field_for, is_prime, make_tower
from ringrep.matgrp import (
    GroupElement,
    fixed_ring,
    identity,
    mat_frob,
    mat_inv,
    mat_level,
    mat_mul,
)
from ringrep.trunc import TruncRing

KINDS = ("split", "nonsplit")
MAX_GAMMA_DEGREE = 6
EXTENSION_BUDGET = 1 << 22


def _ext_ring(q: int, r: int, tower) -> TruncRing:
    """F_{q^K}[eps]/eps^r using every coefficient of ``tower`` (q prime)."""
    return TruncRing(tower, r, q, tower.K)


def _diag(R, a):
    return (tuple(a), R.zero, R.zero, R.inv(tuple(a)))


def _nu(R):
    return (R.zero, R.neg(R.one), R.one, R.zero)


def _to_base(base: TruncRing, raw) -> tuple:
    """Re-home an F-fixed matrix (entries in the prime field) into ``base``."""
    for x in raw:
        for c in x:
            if c >= base.q:
                raise ValueError("matrix is not F-fixed")
    return raw


def _wedge(F, u, v):
    return F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]))


def _scan_gamma(q: int, r: int, tower, sub_degree: int, eigen_of=None):
    """Least u (by encoding) with F^2 u = -u and u ^ F(u) = 1, coordinates in F_{q^sub_degree}.

    With ``eigen_of`` (a constant 2x2 matrix of field ints) u must also be an
    eigenvector of it.  Returns gamma = [u | F(u)] as a raw matrix, or None.
    """
    F = tower
    coords = F.subfield(q ** sub_degree)
    for u0 in coords:
        for u1 in coords:
            if (u0, u1) == (0, 0):
                continue
            Fu = (F.frob(u0, q), F.frob(u1, q))
            F2u = (F.frob(Fu[0], q), F.frob(Fu[1], q))
            if F2u != (F.neg(u0), F.neg(u1)):
                continue
            if _wedge(F, (u0, u1), Fu) != 1:
                continue
            if eigen_of is not None:
                a, b, c, d = eigen_of
                Mu = (F.add(F.mul(a, u0), F.mul(b, u1)), F.add(F.mul(c, u0), F.mul(d, u1)))
                if _wedge(F, Mu, (u0, u1)) != 0:
                    continue
            R = _ext_ring(q, r, tower)
            return tuple(R.const(x) for x in (u0, Fu[0], u1, Fu[1]))
    return None


# -- abelian structure ---------------------------------------------------------

def smith_normal_form(rows, k):
    """Diagonal entries d and unimodular V, V^-1 with rows * V row-equivalent to diag(d)."""
    A = [list(r) for r in rows]
    V = [[int(i == j) for j in range(k)] for i in range(k)]
    Vi = [[int(i == j) for j in range(k)] for i in range(k)]

    def col_op(j, t, c):  # col_j -= c * col_t
        for row in A:
            row[j] -= c * row[t]
        for row in V:
            row[j] -= c * row[t]
        Vi[t] = [x + c * y for x, y in zip(Vi[t], Vi[j])]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    diag = []
    t = 0
    while t < min(len(A), k):
        nz = [(abs(A[i][j]), i, j) for i in range(t, len(A)) for j in range(t, k) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        col_swap(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, len(A)):
                c = A[i][t] // p
                if c:
                    A[i] = [x - c * y for x, y in zip(A[i], A[t])]
            for j in range(t + 1, k):
                c = A[t][j] // p
                if c:
                    col_op(j, t, c)
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, len(A)) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, k) if A[t][j]]
            if rest:
                _, i, j = min(rest)
                if j == t:
                    A[t], A[i] = A[i], A[t]
                else:
                    col_swap(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, len(A)) for j in range(t + 1, k) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        diag.append(A[t][t])
        t += 1
    diag += [0] * (k - len(diag))
    return diag, V, Vi


def cyclic_decomposition(G: FiniteGroup):
    """Generators and orders (d_1 | d_2 | ...) of an abelian group, all d_i > 1.

    Relations come from a breadth-first presentation on a greedy generating
    set and are reduced with the Smith normal form.
    """
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    if G.order == 1:
        return [], []
    gens = []
    span = {G.identity}
    for x in sorted(range(G.order), key=lambda i: (-G.element_order(i), i)):
        if x not in span:
            gens.append(x)
            span = G.closure(gens)
        if len(span) == G.order:
            break
    k = len(gens)
    vec = {G.identity: (0,) * k}
    frontier = [G.identity]
    relations = []
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = G.mul(x, g)
                v = list(vec[x])
                v[i] += 1
                v = tuple(v)
                if y in vec:
                    rel = tuple(a - b for a, b in zip(v, vec[y]))
                    if any(rel):
                        relations.append(rel)
                else:
                    vec[y] = v
                    nxt.append(y)
        frontier = nxt
    diag, _, Vi = smith_normal_form(relations, k)
    out_gens, out_orders = [], []
    for j, d in enumerate(diag):
        if d == 1:
            continue
        h = G.identity
        for i, e in enumerate(Vi[j]):
            h = G.mul(h, G.power(gens[i], e))
        out_gens.append(h)
        out_orders.append(d)
    return out_gens, out_orders


# -- tori ----------------------------------------------------------------------

@dataclass(eq=False)
class TorusData:
    kind: str
    q: int
    r: int
    base: TruncRing
    gamma_degree: int
    gamma: tuple  # raw, over _ext_ring(q, r, make_tower(q, gamma_degree))
    elements: list  # GroupElements over base, sorted by encoding
    params: dict  # element -> a with element = gamma diag(a, a^-1) gamma^-1
    group: FiniteGroup
    generators: list  # element indices
    orders: list
    ct: list  # indices of ct^F = T^{r-1} F-fixed
    regular_element: tuple = None  # constant raw matrix, regular semisimple mod eps
    _log: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def exponent(self) -> int:
        e = 1
        for d in self.orders:
            e = lcm(e, d)
        return e

    @property
    def tower(self):
        return make_tower(self.q, self.gamma_degree)

    def index(self, t) -> int:
        if isinstance(t, GroupElement):
            t = t.raw
        return self.group.index[GroupElement(self.base, 2, t, check=False)]

    def log(self, i: int) -> tuple:
        """Exponent vector of element i against the cyclic generators."""
        return self._log[i]

    def element(self, i: int) -> GroupElement:
        return self.elements[i]

    def ct_elements(self) -> list[GroupElement]:
        return [self.elements[i] for i in self.ct]

    def __repr__(self):
        return f"TorusData({self.kind}, q={self.q}, r={self.r}, |T^F|={self.order}, cyclic={self.orders})"


@lru_cache(maxsize=None)
def build_torus(kind: str, q: int, r: int) -> TorusData:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if q not in (2, 3, 5):
        raise ValueError("q must be 2, 3 or 5")
    if not 1 <= r <= 3:
        raise ValueError("r must be 1, 2 or 3")
    base = fixed_ring(q, r)
    if kind == "split":
        m = 1
        tower = make_tower(q, 1)
        R = _ext_ring(q, r, tower)
        gamma = identity(R, 2)
        candidates = list(R.units())
    else:
        gamma = None
        for m in range(1, MAX_GAMMA_DEGREE + 1):
            tower = make_tower(q, m)
            gamma = _scan_gamma(q, r, tower, m)
            if gamma is not None:
                break
        if gamma is None:
            raise RuntimeError(f"no gamma with gamma^-1 F(gamma) = nu over F_{q}^m, m <= {MAX_GAMMA_DEGREE}")
        R = _ext_ring(q, r, tower)
        if mat_mul(R, 2, mat_inv(R, 2, gamma), mat_frob(R, gamma)) != _nu(R):
            raise AssertionError("gamma^-1 F(gamma) != nu")
        A = TruncRing(tower, r, q, 2)
        candidates = [a for a in A.units() if A.mul(a, A.frobenius(a)) == A.one]
    ginv = mat_inv(R, 2, gamma)
    params = {}
    for a in candidates:
        t = mat_mul(R, 2, mat_mul(R, 2, gamma, _diag(R, a)), ginv)
        if mat_frob(R, t) != t:
            raise AssertionError("torus point is not F-fixed")
        g = GroupElement(base, 2, _to_base(base, t), check=False)
        params[g] = tuple(a)
    elements = sorted(params, key=GroupElement.encode)
    G = FiniteGroup.from_matrices(elements, name=f"T_{kind}(q={q},r={r})")
    gens, orders = cyclic_decomposition(G)
    ct = [i for i, g in enumerate(G.elements) if r == 1 or mat_level(base, 2, g.raw) >= r - 1]
    regular = None
    for g in G.elements:
        c = tuple(x[0] for x in g.raw)
        if c[1] or c[2] or c[0] != c[3]:
            regular = c
            break
    T = TorusData(kind, q, r, base, m, gamma, G.elements, params, G, gens, orders, ct, regular)
    for exps in product(*(range(d) for d in orders)):
        h = G.identity
        for gi, e in zip(gens, exps):
            h = G.mul(h, G.power(gi, e))
        T._log[h] = exps
    if len(T._log) != T.order:
        raise AssertionError("cyclic decomposition does not cover the torus")
    return T


# -- characters ----------------------------------------------------------------

class TorusCharacter:
    """theta(prod g_j^{x_j}) = prod zeta_{d_j}^{e_j x_j}."""

    __slots__ = ("torus", "exps", "_values")

    def __init__(self, torus: TorusData, exps):
        exps = tuple(e % d for e, d in zip(exps, torus.orders))
        if len(exps) != len(torus.orders):
            raise ValueError("exponent vector has the wrong length")
        self.torus = torus
        self.exps = exps
        self._values = None

    @property
    def conductor(self) -> int:
        return self.torus.exponent

    def _k(self, i: int) -> int:
        E = self.torus.exponent
        return sum(e * x * (E // d) for e, x, d in zip(self.exps, self.torus.log(i), self.torus.orders)) % E

    def value_index(self, i: int) -> Cyclotomic:
        return Cyclotomic.zeta(self.torus.exponent, self._k(i))

    def __call__(self, t) -> Cyclotomic:
        i = t if isinstance(t, int) else self.torus.index(t)
        return self.value_index(i)

    def values(self) -> list[Cyclotomic]:
        if self._values is None:
            self._values = [self.value_index(i) for i in range(self.torus.order)]
        return self._values

    def exponent_of(self, i: int) -> int:
        """k with theta(t_i) = zeta_E^k."""
        return self._k(i)

    def __mul__(self, other):
        return TorusCharacter(self.torus, [a + b for a, b in zip(self.exps, other.exps)])

    def inverse(self):
        return TorusCharacter(self.torus, [-a for a in self.exps])

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def __eq__(self, other):
        return isinstance(other, TorusCharacter) and other.torus is self.torus and other.exps == self.exps

    def __hash__(self):
        return hash((self.torus.kind, self.exps))

    def __repr__(self):
        return f"TorusCharacter({self.torus.kind}, {list(self.exps)})"


def all_characters(T: TorusData) -> list[TorusCharacter]:
    return [TorusCharacter(T, e) for e in product(*(range(d) for d in T.orders))]


def character_from_values(T: TorusData, ks) -> TorusCharacter:
    """The character with theta(t_i) = zeta_E^{ks[i]}."""
    E = T.exponent
    exps = []
    for g, d in zip(T.generators, T.orders):
        k = ks[g] % E
        exps.append(k // (E // d))
    theta = TorusCharacter(T, exps)
    if any(theta.exponent_of(i) != ks[i] % E for i in range(T.order)):
        raise ValueError("values do not define a character")
    return theta


# -- frames: extension towers holding F^n-fixed points ---------------------------

@dataclass
class Frame:
    q: int
    r: int
    degree: int
    tower: object
    ring: TruncRing


@lru_cache(maxsize=None)
def frame(q: int, r: int, degree: int) -> Frame:
    if q ** degree > EXTENSION_BUDGET:
        raise ValueError(f"extension F_{q}^{degree} exceeds the budget")
    tower = field_for(q, degree)
    return Frame(q, r, degree, tower, _ext_ring(q, r, tower))


def frame_degree(n: int, *tori: TorusData) -> int:
    d = 2 * n
    for T in tori:
        d = lcm(d, T.gamma_degree)
    return d


@lru_cache(maxsize=None)
def frame_gamma(T: TorusData, degree: int) -> tuple:
    """A constant gamma in the frame tower conjugating D onto T."""
    fr = frame(T.q, T.r, degree)
    if T.kind == "split":
        return identity(fr.ring, 2)
    g = _scan_gamma(T.q, T.r, fr.tower, T.gamma_degree, eigen_of=T.regular_element)
    if g is None:
        raise RuntimeError("no adapted gamma in the frame")
    return g


def _conj(R, g, x):
    return mat_mul(R, 2, mat_mul(R, 2, g, x), mat_inv(R, 2, g))


def is_fixed(R, x, n: int) -> bool:
    return mat_frob(R, x, n) == x


def torus_points(T: TorusData, n: int) -> list:
    """T^{F^n} as raw matrices in the frame of degree lcm(2n, gamma degree)."""
    d = frame_degree(n, T)
    fr = frame(T.q, T.r, d)
    R = fr.ring
    g = frame_gamma(T, d)
    A = TruncRing(fr.tower, T.r, T.q, 2 * n)
    out = []
    for a in A.units():
        t = _conj(R, g, _diag(R, a))
        if is_fixed(R, t, n):
            out.append(t)
    return out


def ct_points(T: TorusData, n: int) -> list:
    """ct^{F^n}: the F^n-fixed points of the level-(r-1) part of T, in the frame."""
    if T.r < 2:
        raise ValueError("ct needs r >= 2")
    d = frame_degree(n, T)
    fr = frame(T.q, T.r, d)
    R, F = fr.ring, fr.tower
    g = frame_gamma(T, d)
    out = []
    for s in F.subfield(T.q ** (2 * n)):
        a = list(R.one)
        a[T.r - 1] = s
        t = _conj(R, g, _diag(R, tuple(a)))
        if is_fixed(R, t, n):
            out.append(t)
    return out


def norm_map(T: TorusData, t, n: int) -> GroupElement:
    """t F(t) ... F^{n-1}(t) for t in T^{F^n}, returned as an element of T^F."""
    if isinstance(t, GroupElement):
        t = t.raw
    d = frame_degree(n, T)
    R = frame(T.q, T.r, d).ring
    if len(t[0]) != T.r:
        raise ValueError("matrix over the wrong ring")
    if not is_fixed(R, t, n):
        raise ValueError("t is not F^n-fixed")
    acc = identity(R, 2)
    cur = t
    for _ in range(n):
        acc = mat_mul(R, 2, acc, cur)
        cur = mat_frob(R, cur)
    if not is_fixed(R, acc, 1):
        raise AssertionError("norm is not F-fixed")
    g = GroupElement(T.base, 2, _to_base(T.base, acc), check=False)
    if g not in T.group.index:
        raise ValueError("t does not lie in the torus")
    return T.elements[T.group.index[g]]


# -- regularity ----------------------------------------------------------------

@lru_cache(maxsize=None)
def regularity_n(T: TorusData) -> int:
    """Least n with F^n(ct) = ct, tested on the F^2-points of ct."""
    if T.r < 2:
        raise ValueError("ct needs r >= 2")
    d = frame_degree(2, T)
    R = frame(T.q, T.r, d).ring
    pts = set(ct_points(T, 2))
    for n in range(1, 3):
        if {mat_frob(R, x, n) for x in pts} == pts:
            return n
    raise AssertionError("ct is not F^2-stable")  # pragma: no cover


def is_regular(theta: TorusCharacter) -> bool:
    T = theta.torus
    if T.r < 2:
        raise ValueError("regularity needs r >= 2")
    n = regularity_n(T)
    if n == 1:
        return any(theta.exponent_of(i) for i in T.ct)
    return any(theta(norm_map(T, x, n)) != Cyclotomic.rational(1) for x in ct_points(T, n))


# -- Weyl sets -----------------------------------------------------------------

@dataclass
class WeylData:
    source: TorusData  # T
    target: TorusData  # T'
    labels: list  # "1", "s"
    frobenius: dict  # label -> label
    fixed_reps: dict  # label -> GroupElement over base, F-fixed, g^-1 T g = T'


def _is_diagonal(R, x):
    return x[1] == R.zero and x[2] == R.zero


@lru_cache(maxsize=None)
def weyl_orbit_data(T: TorusData, T2: TorusData) -> WeylData:
    """W(T,T') = T \\ {g : g^-1 T g = T'} with its Frobenius action."""
    if (T.q, T.r) != (T2.q, T2.r):
        raise ValueError("tori over different rings")
    d = frame_degree(1, T, T2)
    R = frame(T.q, T.r, d).ring
    gT, gT2 = frame_gamma(T, d), frame_gamma(T2, d)
    gTi = mat_inv(R, 2, gT)
    reps = {"1": identity(R, 2), "s": _nu(R)}
    lifts = {w: mat_mul(R, 2, mat_mul(R, 2, gT, dw), mat_inv(R, 2, gT2)) for w, dw in reps.items()}
    frob = {}
    for w, g in lifts.items():
        Fg = mat_frob(R, g)
        for w2, g2 in lifts.items():
            # F(g) in T g2  <=>  gT^-1 F(g) g2^-1 gT is diagonal
            x = mat_mul(R, 2, mat_mul(R, 2, gTi, mat_mul(R, 2, Fg, mat_inv(R, 2, g2))), gT)
            if _is_diagonal(R, x):
                frob[w] = w2
    fixed = {}
    for w, g in lifts.items():
        if frob[w] == w:
            if not is_fixed(R, g, 1):
                raise AssertionError("F-stable Weyl element without an F-fixed lift")
            fixed[w] = GroupElement(T.base, 2, _to_base(T.base, g), check=False)
    return WeylData(T, T2, list(reps), frob, fixed)


def weyl_twist(theta: TorusCharacter, g: GroupElement, target: TorusData) -> TorusCharacter:
    """theta o Ad(g) on target^F, for g with g target g^-1 = theta.torus."""
    T = theta.torus
    ginv = g.inverse()
    ks = []
    for t in target.elements:
        ks.append(theta.exponent_of(T.index(g * t * ginv)))
    return character_from_values(target, ks)


def weyl_stabilizer(theta: TorusCharacter) -> list[str]:
    W = weyl_orbit_data(theta.torus, theta.torus)
    return [w for w, g in W.fixed_reps.items() if weyl_twist(theta, g, theta.torus) == theta]


def predicted_gram(theta: TorusCharacter, theta2: TorusCharacter) -> int:
    """#{w in W(T,T')^F : theta o Ad(w) = theta'}."""
    W = weyl_orbit_data(theta.torus, theta2.torus)
    return sum(1 for g in W.fixed_reps.values() if weyl_twist(theta, g, theta2.torus) == theta2)


# -- norm-orbit equivalence ------------------------------------------------------

@lru_cache(maxsize=None)
def _ct_norms(T: TorusData, degree: int, n: int):
    """(points of ct^{F^n} in the frame, index of N(x) in T^F)."""
    R = frame(T.q, T.r, degree).ring
    g = frame_gamma(T, degree)
    out_pts, out_idx = [], []
    for s in frame(T.q, T.r, degree).tower.subfield(T.q ** (2 * n)):
        a = list(R.one)
        a[T.r - 1] = s
        x = _conj(R, g, _diag(R, tuple(a)))
        if is_fixed(R, x, n):
            out_pts.append(x)
            acc, cur = identity(R, 2), x
            for _ in range(n):
                acc = mat_mul(R, 2, acc, cur)
                cur = mat_frob(R, cur)
            out_idx.append(T.index(_to_base(T.base, acc)))
    return out_pts, out_idx


@lru_cache(maxsize=None)
def normalizer_actions(T: TorusData, T2: TorusData, n: int):
    """Distinct maps x -> N_T(g x g^-1) on ct'^{F^n}, over constant g in N(T',T)^{F^n}.

    g = gamma_T d gamma_T'^-1 with d monomial; the eps-part of g acts
    trivially on ct, and F^n-fixedness forces the entries of d into
    F_{q^{2n}}, so these candidates realize every action.
    """
    d = frame_degree(n, T, T2)
    fr = frame(T.q, T.r, d)
    R, F = fr.ring, fr.tower
    gT, gT2 = frame_gamma(T, d), frame_gamma(T2, d)
    gT2i = mat_inv(R, 2, gT2)
    pts2, _ = _ct_norms(T2, d, n)
    actions = set()
    nu = _nu(R)
    for a in F.subfield(T.q ** (2 * n)):
        if a == 0:
            continue
        D = _diag(R, R.const(a))
        for dm in (D, mat_mul(R, 2, D, nu)):
            g = mat_mul(R, 2, mat_mul(R, 2, gT, dm), gT2i)
            if not is_fixed(R, g, n):
                continue
            gi = mat_inv(R, 2, g)
            img = []
            for x in pts2:
                y = mat_mul(R, 2, mat_mul(R, 2, g, x), gi)
                acc, cur = identity(R, 2), y
                for _ in range(n):
                    acc = mat_mul(R, 2, acc, cur)
                    cur = mat_frob(R, cur)
                img.append(T.index(_to_base(T.base, acc)))
            actions.add(tuple(img))
    return sorted(actions)


def norm_orbit_equivalent(theta: TorusCharacter, theta2: TorusCharacter, n_max: int = 4, witness: bool = False):
    """Is there n <= n_max and g in N(T',T)^{F^n} with theta N o Ad(g) = theta' N on ct'^{F^n}?"""
    T, T2 = theta.torus, theta2.torus
    if T.r != 2 or T2.r != 2:
        raise ValueError("norm-orbit equivalence is implemented for r = 2")
    for n in range(1, n_max + 1):
        d = frame_degree(n, T, T2)
        _, idx2 = _ct_norms(T2, d, n)
        target = [theta2.exponent_of(i) * (lcm(T.exponent, T2.exponent) // T2.exponent) for i in idx2]
        scale = lcm(T.exponent, T2.exponent) // T.exponent
        for img in normalizer_actions(T, T2, n):
            if all(theta.exponent_of(i) * scale % (T.exponent * scale) == k % (T.exponent * scale)
                   for i, k in zip(img, target)):
                return (True, n) if witness else True
    return (False, None) if witness else False
