"""Conjugacy classes, exact character tables and class-function arithmetic.

Character tables are computed by Dixon's modular method: the class
multiplication matrices are simultaneously diagonalized over F_P for a prime
P = 1 mod exponent(G), and each character is lifted back to Q(zeta_e) through
the power maps.  No floating point is involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from ringrep.cyclotomic import ONE, ZERO, Cyclotomic, lcm
from ringrep.gfield import is_prime, prime_factors

GROUP_BUDGET = 10**5
EXPONENT_BUDGET = 10**4


class FiniteGroup:
    """A finite group given by its (hashable) elements and a multiplication."""

    def __init__(self, elements, mul, encode=None, name: str = ""):
        if len(elements) > GROUP_BUDGET:
            raise ValueError(f"group of order {len(elements)} exceeds the budget {GROUP_BUDGET}")
        encode = encode or repr
        self.elements = sorted(elements, key=encode)
        self._mul = mul
        self.encode = encode
        self.name = name
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate group elements")
        e = self.elements[0]
        ident = None
        for x in self.elements:
            if mul(x, e) == e:
                ident = x
                break
        if ident is None:
            raise ValueError("no identity element")
        self.identity = self.index[ident]
        self._inv = {}

    @classmethod
    def from_matrices(cls, mats, name: str = "") -> "FiniteGroup":
        return cls(list(mats), lambda a, b: a * b, encode=lambda g: g.encode(), name=name)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(list(range(n)), lambda a, b: (a + b) % n, encode=lambda x: x, name=f"Z/{n}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        try:
            return self.index[self._mul(self.elements[i], self.elements[j])]
        except KeyError:
            raise ValueError("product left the group: not closed") from None

    def inv(self, i: int) -> int:
        if i in self._inv:
            return self._inv[i]
        # walk the cyclic subgroup; x^(o-1) is the inverse
        prev, cur = self.identity, i
        while cur != self.identity:
            prev, cur = cur, self.mul(cur, i)
        self._inv[i] = prev
        self._inv[prev] = i
        return prev

    def power(self, i: int, e: int) -> int:
        if e < 0:
            i, e = self.inv(i), -e
        out, base = self.identity, i
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != self.identity:
            cur = self.mul(cur, i)
            k += 1
        return k

    def closure(self, gens) -> set:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def generators(self, seed: int = 0) -> list[int]:
        """A small generating set, chosen deterministically from ``seed``."""
        if getattr(self, "_gens", None) is not None:
            return self._gens
        rng = random.Random(seed)
        gens: list[int] = []
        H = {self.identity}
        while len(H) < self.order:
            g = rng.randrange(self.order)
            if g not in H:
                gens.append(g)
                H = self.closure(gens)
        self._gens = gens
        return gens

    def is_abelian(self) -> bool:
        gens = self.generators()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))


# -- conjugacy classes ---------------------------------------------------------

@dataclass
class ConjClass:
    representative: int
    members: list
    size: int
    order: int


@dataclass
class ConjClassSet:
    group: FiniteGroup
    classes: list
    class_of: list
    power_maps: list = field(default_factory=list)

    def __len__(self):
        return len(self.classes)

    @property
    def sizes(self):
        return [c.size for c in self.classes]

    @property
    def orders(self):
        return [c.order for c in self.classes]

    def inverse_class(self, k: int) -> int:
        c = self.classes[k]
        return self.power_maps[k][c.order - 1] if c.order > 1 else k

    def power_class(self, k: int, e: int) -> int:
        c = self.classes[k]
        return self.power_maps[k][e % c.order]

    @property
    def exponent(self) -> int:
        e = 1
        for o in self.orders:
            e = lcm(e, o)
        return e


def conjugacy_classes(G: FiniteGroup) -> ConjClassSet:
    if G.order > GROUP_BUDGET:
        raise ValueError("group exceeds the conjugacy-class budget")
    gens = G.generators()
    ginv = [G.inv(g) for g in gens]
    class_of = [-1] * G.order
    raw = []
    for x in range(G.order):
        if class_of[x] >= 0:
            continue
        orbit = [x]
        class_of[x] = len(raw)
        i = 0
        while i < len(orbit):
            y = orbit[i]
            for g, gi in zip(gens, ginv):
                z = G.mul(G.mul(g, y), gi)
                if class_of[z] < 0:
                    class_of[z] = len(raw)
                    orbit.append(z)
            i += 1
        orbit.sort()
        raw.append(orbit)
    # elements are sorted by encoding, so min index = least encoding
    keyed = sorted(raw, key=lambda orb: (G.element_order(orb[0]), len(orb), orb[0]))
    classes = []
    for k, orb in enumerate(keyed):
        for x in orb:
            class_of[x] = k
        classes.append(ConjClass(orb[0], orb, len(orb), G.element_order(orb[0])))
    power_maps = []
    for c in classes:
        pm, cur = [], G.identity
        for _ in range(c.order):
            pm.append(class_of[cur])
            cur = G.mul(cur, c.representative)
        power_maps.append(pm)
    return ConjClassSet(G, classes, class_of, power_maps)


# -- class functions -----------------------------------------------------------

class ClassFunction:
    """Cyclotomic values, one per conjugacy class."""

    __slots__ = ("classes", "values", "label")

    def __init__(self, classes: ConjClassSet, values, label: str = ""):
        values = [v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v) for v in values]
        if len(values) != len(classes):
            raise ValueError("one value per conjugacy class required")
        self.classes = classes
        self.values = values
        self.label = label

    def _check(self, other):
        if not isinstance(other, ClassFunction) or other.classes is not self.classes:
            raise ValueError("class functions on different groups")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.classes, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.classes, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.classes, [-a for a in self.values], self.label)

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.classes, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.classes, [a * other for a in self.values])

    __rmul__ = __mul__

    def conjugate(self):
        return ClassFunction(self.classes, [a.conjugate() for a in self.values])

    @property
    def degree(self):
        v = self.values[0]
        return int(v.to_rational()) if v.is_rational() and v.to_rational().denominator == 1 else v

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and other.classes is self.classes and self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values))

    def __call__(self, k: int) -> Cyclotomic:
        return self.values[k]

    def __repr__(self):
        return f"ClassFunction({self.label or self.values[:4]}...)"


def inner_product(f: ClassFunction, g: ClassFunction):
    """(1/|G|) sum_x f(x) conj(g(x)), exact."""
    if f.classes is not g.classes:
        raise ValueError("class functions on different groups")
    cs = f.classes
    total = ZERO
    for c, a, b in zip(cs.classes, f.values, g.values):
        if a.is_zero() or b.is_zero():
            continue
        total = total + a * b.conjugate() * c.size
    total = total / cs.group.order
    return total.to_rational() if total.is_rational() else total


def trivial_character(cs: ConjClassSet) -> ClassFunction:
    return ClassFunction(cs, [1] * len(cs), "trivial")


def regular_character(cs: ConjClassSet) -> ClassFunction:
    vals = [0] * len(cs)
    vals[cs.class_of[cs.group.identity]] = cs.group.order
    return ClassFunction(cs, vals, "regular")


def permutation_character(cs: ConjClassSet, action, points) -> ClassFunction:
    """Fixed-point counts of ``action(g_index, point)`` at each class representative."""
    vals = []
    for c in cs.classes:
        vals.append(sum(1 for x in points if action(c.representative, x) == x))
    return ClassFunction(cs, vals, "permutation")


# -- Dixon's method ------------------------------------------------------------

def _primitive_root(P: int) -> int:
    fs = prime_factors(P - 1)
    for g in range(2, P):
        if all(pow(g, (P - 1) // f, P) != 1 for f in fs):
            return g
    raise AssertionError("no primitive root")  # pragma: no cover


def _dixon_primes(exponent: int, order: int):
    P = exponent * (2 * isqrt(order) // exponent + 1) + 1
    while True:
        if is_prime(P) and order % P:
            yield P
        P += exponent


def _rref(rows, P):
    """Reduced row echelon form mod P; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    lead = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(lead, len(rows)) if rows[i][col] % P), None)
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        inv = pow(rows[lead][col], P - 2, P)
        rows[lead] = [x * inv % P for x in rows[lead]]
        for i in range(len(rows)):
            if i != lead and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % P for x, y in zip(rows[i], rows[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(rows):
            break
    return rows[:lead], pivots


def _nullspace(A, P):
    """Basis of {w : A w = 0} mod P for a square matrix A (list of rows)."""
    d = len(A)
    R, piv = _rref(A, P)
    free = [c for c in range(d) if c not in piv]
    basis = []
    for f in free:
        w = [0] * d
        w[f] = 1
        for row, pc in zip(R, piv):
            w[pc] = -row[f] % P
        basis.append(w)
    return basis


def _charpoly(A, P):
    """Characteristic polynomial mod P via Hessenberg reduction (little-endian, monic)."""
    n = len(A)
    H = [row[:] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1] % P), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(H[m][m - 1], P - 2, P)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % P
            if u:
                H[i] = [(x - u * y) % P for x, y in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[i]) % P
    # p_k(x) = (x - h_kk) p_{k-1} - sum_i h_ik prod_{j=i+1..k} h_{j,j-1} p_{i-1}
    polys = [[1]]
    for k in range(n):
        pk = [0] + polys[k]
        for i, c in enumerate(polys[k]):
            pk[i] = (pk[i] - H[k][k] * c) % P
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * H[i + 1][i] % P
            if not prod:
                break
            coef = H[i][k] * prod % P
            for j, c in enumerate(polys[i]):
                pk[j] = (pk[j] - coef * c) % P
        polys.append(pk)
    return polys[n]


def _poly_roots(poly, P, candidates):
    roots = []
    for x in candidates:
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % P
        if acc == 0:
            roots.append(x)
    return roots


class DixonFailure(RuntimeError):
    pass


def _class_matrix(cs: ConjClassSet, j: int):
    """(M_j)[i][k] = #{x in C_j : x^-1 z_k in C_i}; central characters are right eigenvectors."""
    G = cs.group
    k_count = len(cs)
    M = [[0] * k_count for _ in range(k_count)]
    invs = [G.inv(x) for x in cs.classes[j].members]
    for k, c in enumerate(cs.classes):
        z = c.representative
        for xi in invs:
            M[cs.class_of[G.mul(xi, z)]][k] += 1
    return M


def _split_spaces(cs: ConjClassSet, P: int, matrices):
    k = len(cs)
    spaces = [[[int(i == j) for j in range(k)] for i in range(k)]]
    done = []
    # eigenvalues of class matrices are algebraic integers in Z[zeta_e], hence
    # in F_P; they must be among the residues, so search all of F_P once per poly
    for M in matrices:
        if not spaces:
            break
        nxt = []
        for basis in spaces:
            basis, piv = _rref(basis, P)
            d = len(basis)
            images = []
            for b in basis:
                images.append([sum(M[i][kk] * b[kk] for kk in range(k)) % P for i in range(k)])
            A = [[images[s][piv[t]] for s in range(d)] for t in range(d)]
            cp = _charpoly(A, P)
            roots = _poly_roots(cp, P, range(P))
            total = 0
            for lam in roots:
                shifted = [[(A[t][s] - (lam if s == t else 0)) % P for s in range(d)] for t in range(d)]
                ns = _nullspace(shifted, P)
                total += len(ns)
                vecs = [[sum(w[s] * basis[s][i] for s in range(d)) % P for i in range(k)] for w in ns]
                (done if len(vecs) == 1 else nxt).append(vecs)
            if total != d:
                raise DixonFailure(f"class matrix not diagonalizable mod {P}")
        spaces = nxt
    if spaces:
        raise DixonFailure("class matrices did not separate all characters")
    return [v[0] for v in done]


def character_table(cs: ConjClassSet, verify: bool = True) -> "CharacterTable":
    G = cs.group
    e = cs.exponent
    if e > EXPONENT_BUDGET:
        raise ValueError(f"exponent {e} exceeds the budget")
    order = G.order
    last_error = None
    for attempt, P in enumerate(_dixon_primes(e, order)):
        if attempt >= 20:
            break
        try:
            return _dixon(cs, P, verify)
        except DixonFailure as exc:
            last_error = exc
    raise DixonFailure(f"modular prime search failed: {last_error}")


def _dixon(cs: ConjClassSet, P: int, verify: bool) -> "CharacterTable":
    G = cs.group
    k = len(cs)
    e = cs.exponent
    order = G.order
    ident = cs.class_of[G.identity]
    order_matrices = sorted(range(k), key=lambda j: (-cs.classes[j].size, j))
    order_matrices = [j for j in order_matrices if j != ident]
    matrices = (_class_matrix(cs, j) for j in order_matrices)
    vecs = _split_spaces(cs, P, matrices)
    if len(vecs) != k:
        raise DixonFailure("wrong number of characters")
    zP = pow(_primitive_root(P), (P - 1) // e, P)
    sizes = cs.sizes
    chars = []
    for v in vecs:
        scale = pow(v[ident], P - 2, P)
        omega = [x * scale % P for x in v]
        s = 0
        for kk in range(k):
            s = (s + omega[kk] * omega[cs.inverse_class(kk)] * pow(sizes[kk], P - 2, P)) % P
        if s == 0:
            raise DixonFailure("degenerate central character")
        d2 = order * pow(s, P - 2, P) % P
        deg = next((d for d in range(1, isqrt(order) + 1) if d * d % P == d2 and order % d == 0), None)
        if deg is None:
            raise DixonFailure("no integral degree")
        modvals = [omega[kk] * deg * pow(sizes[kk], P - 2, P) % P for kk in range(k)]
        values = []
        for kk, c in enumerate(cs.classes):
            o = c.order
            zo = pow(zP, e // o, P)
            coeffs = [0] * e
            inv_o = pow(o, P - 2, P)
            for i in range(o):
                m = 0
                for l in range(o):
                    m = (m + modvals[cs.power_maps[kk][l]] * pow(zo, (-i * l) % o, P)) % P
                m = m * inv_o % P
                if m > P // 2:
                    m -= P
                coeffs[i * (e // o)] = m
            values.append(Cyclotomic(e, _fold(coeffs, e)))
        chars.append(ClassFunction(cs, values))
    table = CharacterTable(cs, chars)
    if verify:
        table.verify()
    return table


def _fold(coeffs, e):
    from ringrep.cyclotomic import _reduce
    return _reduce([Fraction(c) for c in coeffs], e)


def _char_key(chi: ClassFunction):
    return (chi.degree if isinstance(chi.degree, int) else 0,
            tuple(tuple(v.promote(chi.classes.exponent).coeffs) for v in chi.values))


class CharacterTable:
    def __init__(self, classes: ConjClassSet, irreducibles):
        self.classes = classes
        triv = [chi for chi in irreducibles if all(v == ONE for v in chi.values)]
        rest = sorted((chi for chi in irreducibles if chi not in triv), key=_char_key)
        self.irreducibles = triv + rest
        for i, chi in enumerate(self.irreducibles):
            chi.label = f"chi{i}"

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, i):
        return self.irreducibles[i]

    @property
    def degrees(self) -> list[int]:
        return [chi.degree for chi in self.irreducibles]

    def verify(self):
        order = self.classes.group.order
        if sum(d * d for d in self.degrees) != order:
            raise DixonFailure("sum of squared degrees differs from the group order")
        for i, a in enumerate(self.irreducibles):
            for j, b in enumerate(self.irreducibles[i:], i):
                if inner_product(a, b) != (1 if i == j else 0):
                    raise DixonFailure(f"rows {i},{j} not orthonormal")

    def decompose(self, f: ClassFunction) -> list:
        """Multiplicities <f, chi_i>; Fractions (integers for virtual characters)."""
        return [inner_product(f, chi) for chi in self.irreducibles]

    def decompose_integral(self, f: ClassFunction) -> list[int]:
        mults = self.decompose(f)
        out = []
        for m in mults:
            if not isinstance(m, Fraction) or m.denominator != 1:
                raise ValueError(f"non-integral multiplicity {m}")
            out.append(int(m))
        return out

    def index_of(self, f: ClassFunction):
        """(index, sign) if f = +-chi_i, else None."""
        for i, chi in enumerate(self.irreducibles):
            if chi.values == f.values:
                return i, 1
            if all(a == -b for a, b in zip(chi.values, f.values)):
                return i, -1
        return None

    def to_json(self, meta=None, rep_encoder=None) -> dict:
        cs = self.classes
        G = cs.group
        classes = []
        for c in cs.classes:
            entry = {"size": c.size, "order": c.order}
            if rep_encoder is not None:
                entry["representative"] = rep_encoder(G.elements[c.representative])
            classes.append(entry)
        out = dict(meta or {})
        out.update({
            "order": G.order,
            "num_classes": len(cs),
            "classes": classes,
            "irreducibles": [
                {"degree": chi.degree, "values": [v.to_json() for v in chi.values]}
                for chi in self.irreducibles
            ],
        })
        return out


# -- product-group characters ----------------------------------------------------

class ProductCharacter:
    """A class function on G x Gamma with Gamma abelian: values[k][t] for class k of G, t in Gamma."""

    def __init__(self, classes: ConjClassSet, gamma: FiniteGroup, values):
        if not gamma.is_abelian():
            raise ValueError("Gamma must be abelian")
        self.classes = classes
        self.gamma = gamma
        self.values = [[v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v) for v in row] for row in values]

    def at_identity(self) -> ClassFunction:
        return ClassFunction(self.classes, [row[self.gamma.identity] for row in self.values])


def isotypic_component(chi: ProductCharacter, omega) -> ClassFunction:
    """g -> (1/|Gamma|) sum_t omega(t)^-1 chi(g, t); ``omega`` maps Gamma indices to Cyclotomic."""
    gamma = chi.gamma
    if not gamma.is_abelian():
        raise ValueError("Gamma must be abelian")
    ws = [omega(t).conjugate() for t in range(gamma.order)]
    vals = []
    for row in chi.values:
        acc = ZERO
        for w, v in zip(ws, row):
            if not v.is_zero():
                acc = acc + w * v
        vals.append(acc / gamma.order)
    return ClassFunction(chi.classes, vals)


def inflate(f: ClassFunction, gamma: FiniteGroup) -> ProductCharacter:
    return ProductCharacter(f.classes, gamma, [[v] * gamma.order for v in f.values])


def abelian_characters(gamma: FiniteGroup):
    """All linear characters of an abelian group, as lists of Cyclotomic values by element index."""
    if not gamma.is_abelian():
        raise ValueError("Gamma must be abelian")
    cs = conjugacy_classes(gamma)
    table = character_table(cs)
    out = []
    for chi in table.irreducibles:
        out.append([chi.values[cs.class_of[t]] for t in range(gamma.order)])
    return out
