"""Finite models of the level-2 geometry of SL_2 and the virtual characters they carry.

Three coverings of the flag set are modelled:

* ``X~``  : G_2^F / U_2^F (U lower unitriangular) with the right action of
  the diagonal torus; its permutation character is all of H^0_c.
* ``X~'`` : a union of q(q^2-1) affine lines, modelled by its set of
  components; H^2_c is the permutation module on components.
* ``X~''``: identified with S = {x in V_2 : x ^ F(x) = e ^ e'}; its
  alternating cohomology is computed through Lefschetz numbers, using the
  stratification of S into two affine line bundles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from ringrep import torus as tor
from ringrep.charkit import (
    ClassFunction,
    FiniteGroup,
    ProductCharacter,
    abelian_characters,
    character_table,
    conjugacy_classes,
    inner_product,
    isotypic_component,
    regular_character,
)
from ringrep.cyclotomic import Cyclotomic
from ringrep.gfield import make_tower
from ringrep.matgrp import GroupElement, enumerate_sl_fixed, fixed_ring, mat_inv, mat_mul
from ringrep.trunc import TruncRing

POSITIONS = ("O", "O'", "O''")
FLAG_BUDGET = 4


class ModelError(RuntimeError):
    """A finite model violated one of its defining checks."""


# -- the group and its table ------------------------------------------------------

@dataclass(eq=False)
class GroupContext:
    q: int
    r: int
    group: FiniteGroup
    classes: object
    table: object

    @property
    def order(self):
        return self.group.order


@lru_cache(maxsize=None)
def group_context(q: int, r: int = 2) -> GroupContext:
    G = FiniteGroup.from_matrices(enumerate_sl_fixed(2, q, r), name=f"SL2(F{q}[e]/e^{r})")
    cs = conjugacy_classes(G)
    return GroupContext(q, r, G, cs, character_table(cs))


# -- flags and relative positions ---------------------------------------------------

def _canonical_line(R: TruncRing, v):
    """Canonical generator of the line A v: (1, y) if v_0 is a unit, else (x, 1)."""
    if R.is_unit(v[0]):
        return (R.one, R.mul(R.inv(v[0]), v[1]))
    if R.is_unit(v[1]):
        return (R.mul(R.inv(v[1]), v[0]), R.one)
    raise ValueError("vector is not unimodular")


def relative_position(R: TruncRing, v, w) -> str:
    """Position of the pair of lines (A v, A w), read off from det(v, w)."""
    det = R.sub(R.mul(v[0], w[1]), R.mul(v[1], w[0]))
    if R.is_unit(det):
        return "O''"
    if det == R.zero:
        return "O"
    return "O'"


def relative_position_by_sets(R: TruncRing, v, w) -> str:
    """The same classification from the definitions (used as an oracle)."""
    Lv = {(R.mul(a, v[0]), R.mul(a, v[1])) for a in R.elements()}
    Lw = {(R.mul(a, w[0]), R.mul(a, w[1])) for a in R.elements()}
    meet = Lv & Lw
    eps = R.eps
    epsL = {(R.mul(eps, x), R.mul(eps, y)) for x, y in Lv}
    epsL2 = {(R.mul(eps, x), R.mul(eps, y)) for x, y in Lw}
    cases = []
    if Lv == Lw:
        cases.append("O")
    if meet == epsL == epsL2:
        cases.append("O'")
    if meet == {(R.zero, R.zero)}:
        cases.append("O''")
    if len(cases) != 1:
        raise ModelError(f"pair falls in {cases}")
    return cases[0]


@dataclass
class FlagTable:
    q: int
    m: int
    lines: list
    positions: list  # position of (L, F(L)) for each line
    counts: dict


def flag_lines(R: TruncRing) -> list:
    lines = [(R.one, y) for y in R.elements()]
    lines += [(x, R.one) for x in R.elements() if not R.is_unit(x)]
    return lines


def flag_positions(q: int, m: int) -> FlagTable:
    if not 1 <= m <= FLAG_BUDGET:
        raise ValueError(f"m must be in 1..{FLAG_BUDGET}")
    tower = make_tower(q, m)
    R = TruncRing(tower, 2, q, m)
    lines = flag_lines(R)
    positions = []
    for v in lines:
        Fv = _canonical_line(R, (R.frobenius(v[0]), R.frobenius(v[1])))
        positions.append(relative_position(R, v, Fv))
    counts = {p: positions.count(p) for p in POSITIONS}
    return FlagTable(q, m, lines, positions, counts)


# -- finite G-sets with a commuting right action ---------------------------------------

@dataclass(eq=False)
class FiniteGSet:
    """Points with a left action of G (by element index) and a right action of Gamma."""

    name: str
    context: GroupContext
    points: list
    gamma: FiniteGroup
    g_table: list  # g_table[g][p] = g . p
    t_table: list  # t_table[t][p] = p . t
    extras: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.points)

    def check_commute(self) -> bool:
        for gp in self.g_table:
            for tp in self.t_table:
                for p in range(len(self.points)):
                    if gp[tp[p]] != tp[gp[p]]:
                        return False
        return True

    def is_free(self) -> bool:
        ident = self.gamma.identity
        for t, tp in enumerate(self.t_table):
            if t != ident and any(tp[p] == p for p in range(len(self.points))):
                return False
        return True

    def orbit_count(self) -> int:
        G = self.context.group
        gens = G.generators()
        seen = [False] * len(self.points)
        n = 0
        for p in range(len(self.points)):
            if seen[p]:
                continue
            n += 1
            stack = [p]
            seen[p] = True
            while stack:
                x = stack.pop()
                for g in gens:
                    y = self.g_table[g][x]
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
        return n

    def stabilizer(self, p: int) -> list[int]:
        return [g for g, gp in enumerate(self.g_table) if gp[p] == p]

    def product_character(self) -> ProductCharacter:
        cs = self.context.classes
        vals = []
        for c in cs.classes:
            gp = self.g_table[c.representative]
            row = []
            for tp in self.t_table:
                row.append(sum(1 for p in range(len(self.points)) if gp[tp[p]] == p))
            vals.append(row)
        return ProductCharacter(cs, self.gamma, vals)

    def permutation_character(self) -> ClassFunction:
        return self.product_character().at_identity()


# -- virtual characters --------------------------------------------------------------

@dataclass
class VirtualCharacter:
    values: ClassFunction
    variety: str
    label: str
    multiplicities: list

    @property
    def degree(self) -> int:
        return self.values.degree

    def constituents(self, table) -> list:
        return [(i, table.degrees[i], m) for i, m in enumerate(self.multiplicities) if m]

    def irreducible_match(self):
        """(index, sign) if this is +-(one irreducible), else None."""
        nz = [(i, m) for i, m in enumerate(self.multiplicities) if m]
        if len(nz) == 1 and abs(nz[0][1]) == 1:
            return nz[0][0], nz[0][1]
        return None

    def to_json(self, table) -> dict:
        return {
            "variety": self.variety,
            "omega": self.label,
            "degree": self.degree,
            "constituents": [
                {"index": i, "degree": d, "multiplicity": m} for i, d, m in self.constituents(table)
            ],
        }


def _virtual(ctx: GroupContext, f: ClassFunction, variety: str, label: str) -> VirtualCharacter:
    mults = ctx.table.decompose(f)
    for m in mults:
        if not isinstance(m, Fraction) or m.denominator != 1:
            raise ModelError(f"{variety}[{label}] has non-integral multiplicity {m}")
    return VirtualCharacter(f, variety, label, [int(m) for m in mults])


def _omega_fn(values):
    return lambda t: values[t]


# -- X~ ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def build_xtil(q: int) -> FiniteGSet:
    if q not in (2, 3, 5):
        raise ValueError("q must be 2, 3 or 5")
    ctx = group_context(q)
    G = ctx.group
    R = fixed_ring(q, 2)
    U = [G.index[GroupElement(R, 2, (R.one, R.zero, b, R.one), check=False)] for b in R.elements()]
    coset = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset[g] < 0:
            for u in U:
                coset[G.mul(g, u)] = len(reps)
            reps.append(g)
    if len(reps) != q ** 4 - q ** 2:
        raise ModelError(f"|G/U| = {len(reps)} differs from q^4 - q^2")
    T = tor.build_torus("split", q, 2)
    t_idx = [G.index[t] for t in T.elements]
    g_table = [tuple(coset[G.mul(g, x)] for x in reps) for g in range(G.order)]
    t_table = [tuple(coset[G.mul(x, t)] for x in reps) for t in t_idx]
    return FiniteGSet("X~", ctx, reps, T.group, g_table, t_table, {"torus": T})


def xtil_isotypic(q: int, omega) -> VirtualCharacter:
    """H^0_c(X~)_omega for a TorusCharacter omega of the split torus."""
    X = build_xtil(q)
    chi = _xtil_product(q)
    f = isotypic_component(chi, _omega_fn(omega.values()))
    return _virtual(X.context, f, "X~", _label(omega))


@lru_cache(maxsize=None)
def _xtil_product(q):
    return build_xtil(q).product_character()


def _label(omega) -> str:
    if isinstance(omega, tor.TorusCharacter):
        return f"{omega.torus.kind}{list(omega.exps)}"
    return str(omega)


# -- X~' ---------------------------------------------------------------------------

def _xprime_gamma(q: int) -> FiniteGroup:
    signs = sorted({1, q - 1})
    elems = [(s, k) for s in signs for k in range(q)]
    return FiniteGroup(elems, lambda a, b: (a[0] * b[0] % q, (a[1] + b[1]) % q), encode=lambda x: x,
                       name="Gamma'")


@lru_cache(maxsize=None)
def build_xtil_prime(q: int) -> FiniteGSet:
    """Components of X~' labelled (c0, d0, f), with f^q - f = 1."""
    if q not in (2, 3):
        raise ValueError("q must be 2 or 3")
    ctx = group_context(q)
    G = ctx.group
    tower = make_tower(q, q)  # f lives in the Artin-Schreier extension of degree p = q
    F = tower
    R = TruncRing(tower, 2, q, tower.K)
    fs = [f for f in F.elements() if F.sub(F.frob(f, q), f) == 1]
    if len(fs) != q:
        raise ModelError("Artin-Schreier equation has the wrong number of roots")
    labels = [(c0, d0, f) for c0 in range(q) for d0 in range(q) if (c0, d0) != (0, 0) for f in fs]
    index = {lab: i for i, lab in enumerate(labels)}

    def point(lab):
        c0, d0, f = lab
        if c0:
            c1, d1 = 0, F.neg(F.div(f, c0))
        else:
            c1, d1 = F.div(f, d0), 0
        a0 = F.sub(F.frob(c1, q), c1)
        b0 = F.sub(F.frob(d1, q), d1)
        # a0 d1 + a1 d0 - b0 c1 - b1 c0 = 0
        rest = F.sub(F.mul(a0, d1), F.mul(b0, c1))
        if d0:
            a1, b1 = F.neg(F.div(rest, d0)), 0
        else:
            a1, b1 = 0, F.div(rest, c0)
        return ((a0, a1), (c0, c1), (b0, b1), (d0, d1))

    h = ((1, 0), (0, 1), (0, 0), (1, 0))  # e -> e, e' -> e' + eps e

    def in_y(g):
        # g^-1 F(g) in h U, U lower unitriangular
        x = mat_mul(R, 2, mat_inv(R, 2, h), mat_mul(R, 2, mat_inv(R, 2, g), tuple(R.frobenius(v) for v in g)))
        return x[0] == R.one and x[1] == R.zero and x[3] == R.one

    def label_of(g):
        (c0, c1), (d0, d1) = g[1], g[3]
        return (c0, d0, F.sub(F.mul(c1, d0), F.mul(d1, c0)))

    pts = [point(lab) for lab in labels]
    for lab, g in zip(labels, pts):
        if not in_y(g) or label_of(g) != lab:
            raise ModelError(f"explicit point for component {lab} is not on X~'")
    g_table = []
    for s in G.elements:
        row = []
        for g in pts:
            sg = mat_mul(R, 2, s.raw, g)
            lab = label_of(sg)
            if lab not in index:
                raise ModelError("group action does not permute components")
            row.append(index[lab])
        g_table.append(tuple(row))
    gamma = _xprime_gamma(q)
    t_table = []
    for (s, k) in gamma.elements:
        t_table.append(tuple(index[(c0 * s % q, d0 * s % q, F.add(f, k))] for c0, d0, f in labels))
    X = FiniteGSet("X~'", ctx, labels, gamma, g_table, t_table, {"tower": tower, "explicit_points": pts})
    return X


def equivariant_automorphism_order(X: FiniteGSet) -> int:
    """|Aut_G(X)| = |N_G(H)/H| for a transitive X with point stabilizer H."""
    if X.orbit_count() != 1:
        raise ValueError("G-set is not transitive")
    G = X.context.group
    H = X.stabilizer(0)
    Hs = set(H)
    N = [g for g in range(G.order) if all(G.conj(g, h) in Hs for h in H)]
    return len(N) // len(H)


def xtil_prime_isotypic(q: int, omega_values, label: str = "") -> VirtualCharacter:
    X = build_xtil_prime(q)
    chi = _xprime_product(q)
    f = isotypic_component(chi, _omega_fn(omega_values))
    return _virtual(X.context, f, "X~'", label)


@lru_cache(maxsize=None)
def _xprime_product(q):
    return build_xtil_prime(q).product_character()


# -- the surface S and X~'' ------------------------------------------------------------

@lru_cache(maxsize=None)
def enumerate_s00(q: int) -> FiniteGSet:
    """S_00 = {x : x ^ F(x) = e ^ e', F^2 x = -x} with the action of G^F = SL_2(F_q)."""
    T = tor.build_torus("nonsplit", q, 2)
    F = T.tower
    pts = []
    for a, b in product(F.elements(), repeat=2):
        Fa, Fb = F.frob(a, q), F.frob(b, q)
        if F.sub(F.mul(a, Fb), F.mul(Fa, b)) != 1:
            continue
        if (F.frob(Fa, q), F.frob(Fb, q)) != (F.neg(a), F.neg(b)):
            continue
        pts.append((a, b))
    index = {p: i for i, p in enumerate(pts)}
    G1 = FiniteGroup.from_matrices(enumerate_sl_fixed(2, q, 1), name=f"SL2(F{q})")
    ctx = GroupContext(q, 1, G1, None, None)
    g_table = []
    for g in G1.elements:
        a, b, c, d = (x[0] for x in g.raw)
        row = []
        for x0, x1 in pts:
            y = (F.add(F.mul(a, x0), F.mul(b, x1)), F.add(F.mul(c, x0), F.mul(d, x1)))
            row.append(index[y])
        g_table.append(tuple(row))
    trivial = FiniteGroup([0], lambda x, y: 0, encode=lambda x: x)
    return FiniteGSet("S00", ctx, pts, trivial, g_table, [tuple(range(len(pts)))], {"tower": F})


def s00_coordinates(q: int):
    """(a, c) coordinates with c = b/a: a^(q+1) (c^q - c) = 1, c in F_{q^2} minus F_q."""
    S = enumerate_s00(q)
    F = S.extras["tower"]
    out = []
    for a, b in S.points:
        c = F.div(b, a)
        out.append((a, c))
    return out


def _vec_wedge(F, u, v):
    return F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]))


def _mat_vec(F, M, v):
    a, b, c, d = M
    return (F.add(F.mul(a, v[0]), F.mul(b, v[1])), F.add(F.mul(c, v[0]), F.mul(d, v[1])))


def probe_lambda(T, t: GroupElement):
    """The scalar by which t acts on S, found by acting on a probe point.

    t corresponds to d = gamma^-1 t gamma in Gamma''; it acts on X~'' by
    g -> g d^-1, i.e. on x = g e' by x -> g d^-1 e'.
    """
    R = tor._ext_ring(T.q, T.r, T.tower)
    g = T.gamma
    d = mat_mul(R, 2, mat_inv(R, 2, g), mat_mul(R, 2, t.raw, g))
    if d[1] != R.zero or d[2] != R.zero:
        raise ModelError("torus element is not diagonal in the gamma frame")
    # probe: h = gamma (so x = h e' = F(u)-column), image h d^-1 e'
    x = (g[1], g[3])
    dinv = mat_inv(R, 2, d)
    hd = mat_mul(R, 2, g, dinv)
    y = (hd[1], hd[3])
    lam = R.mul(y[0], R.inv(x[0])) if R.is_unit(x[0]) else R.mul(y[1], R.inv(x[1]))
    if (R.mul(lam, x[0]), R.mul(lam, x[1])) != y:
        raise ModelError("probe image is not a scalar multiple")
    A = TruncRing(T.tower, T.r, T.q, 2)
    if A.mul(lam, A.frobenius(lam)) != A.one:
        raise ModelError("probe scalar does not satisfy lambda F(lambda) = 1")
    return lam


def lefschetz(q: int, g: GroupElement, lam) -> int:
    """Lefschetz number of x -> lam g x on S (level 2).

    S = S_* u S_**.  S_* is an affine line bundle over the finite set
    P = S_00 x {a0 : a0 + a0^q = 0}; S_** is an affine line bundle over
    S_0 - S_00.  Affine fibre actions do not change Lefschetz numbers, so
        L(S) = #P^sigma + L(sigma_0, S_0) - #S_00^{sigma_0}.
    """
    S = enumerate_s00(q)
    F = S.extras["tower"]
    lam0, lam1 = lam
    g0 = tuple(x[0] for x in g.raw)
    g1 = tuple(x[1] for x in g.raw)
    M = tuple(F.mul(lam0, x) for x in g0)
    g0inv = (g0[3], F.neg(g0[1]), F.neg(g0[2]), g0[0])
    N1 = _mat_mul_f(F, g0inv, g1)
    shift = F.div(lam1, lam0)
    fixed_base = 0
    fixed_p = 0
    for x in S.points:
        if _mat_vec(F, M, x) != x:
            continue
        fixed_base += 1
        Fx = (F.frob(x[0], q), F.frob(x[1], q))
        alpha = _vec_wedge(F, _mat_vec(F, N1, x), Fx)
        if F.add(shift, alpha) == 0:
            fixed_p += q  # every a0 with a0 + a0^q = 0 is fixed
    return fixed_p + lefschetz_s0(q, M) - fixed_base


def _mat_mul_f(F, A, B):
    a, b, c, d = A
    e, f, g, h = B
    return (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))


def lefschetz_s0(q: int, M) -> int:
    """Lefschetz number of x -> M x on S_0 = {x : x ^ F(x) = 1}, M = lam0 g0.

    * M = 1: chi_c(S_0) = 1 - q^2;
    * M unipotent, M != 1: q + 1 (from the quotient by <M>, a p-cycle);
    * otherwise M has order prime to p on S_0 and L counts fixed points:
      x = c v with v a 1-eigenvector, c^(q+1) (v ^ F v) = 1.
    """
    F = enumerate_s00(q).extras["tower"]
    a, b, c, d = M
    one = 1
    A = (F.sub(a, one), b, c, F.sub(d, one))
    if A == (0, 0, 0, 0):
        return 1 - q * q
    if _mat_mul_f(F, A, A) == (0, 0, 0, 0):
        return q + 1
    det = F.sub(F.mul(A[0], A[3]), F.mul(A[1], A[2]))
    if det != 0:
        return 0
    # kernel of A: (b, 1 - a) or (d - 1, -c) up to scaling
    v = (A[1], F.neg(A[0])) if (A[0], A[1]) != (0, 0) else (A[3], F.neg(A[2]))
    Fv = (F.frob(v[0], q), F.frob(v[1], q))
    return q + 1 if _vec_wedge(F, v, Fv) != 0 else 0


@lru_cache(maxsize=None)
def lefschetz_xtilpp(q: int) -> dict:
    """L(g, t) for class representatives g of G_2^F and all t in the non-split T_2^F."""
    if q not in (2, 3):
        raise ValueError("q must be 2 or 3")
    ctx = group_context(q)
    T = tor.build_torus("nonsplit", q, 2)
    lams = [probe_lambda(T, t) for t in T.elements]
    table = []
    for c in ctx.classes.classes:
        g = ctx.group.elements[c.representative]
        table.append([lefschetz(q, g, lam) for lam in lams])
    return {"torus": T, "lambdas": lams, "values": table}


def xtilpp_product(q: int) -> ProductCharacter:
    data = lefschetz_xtilpp(q)
    return ProductCharacter(group_context(q).classes, data["torus"].group, data["values"])


# -- assembling R ---------------------------------------------------------------------

def assemble_R(variety: str, q: int, omega, label: str = "") -> VirtualCharacter:
    """The omega-isotypic alternating-sum character of one of the three coverings.

    ``omega`` is a TorusCharacter (X~: split torus; X~'': non-split torus) or a
    list of Cyclotomic values on Gamma' (X~').
    """
    if variety in ("X~", "xtil"):
        return xtil_isotypic(q, omega)
    if variety in ("X~'", "xtil_prime"):
        return xtil_prime_isotypic(q, omega, label)
    if variety in ("X~''", "xtil_pp"):
        chi = xtilpp_product(q)
        f = isotypic_component(chi, _omega_fn(omega.values()))
        return _virtual(group_context(q), f, "X~''", label or _label(omega))
    raise ValueError(f"unknown variety {variety!r}")


def gram(chars: list[VirtualCharacter]) -> list[list]:
    return [[inner_product(a.values, b.values) for b in chars] for a in chars]


# -- span -------------------------------------------------------------------------------

def _rank_and_rowspace(rows):
    """Row-reduce over Q; returns (rank, reduced rows, pivots)."""
    A = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    lead = 0
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        piv = next((i for i in range(lead, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[lead], A[piv] = A[piv], A[lead]
        p = A[lead][col]
        A[lead] = [x / p for x in A[lead]]
        for i in range(len(A)):
            if i != lead and A[i][col] != 0:
                c = A[i][col]
                A[i] = [x - c * y for x, y in zip(A[i], A[lead])]
        pivots.append(col)
        lead += 1
    return lead, A[:lead], pivots


def _in_rowspace(reduced, pivots, v):
    v = [Fraction(x) for x in v]
    for row, pc in zip(reduced, pivots):
        if v[pc] != 0:
            c = v[pc]
            v = [x - c * y for x, y in zip(v, row)]
    return not any(v)


def _solve_combination(rows, target):
    """Rational coefficients c with sum c_i rows_i = target, or None."""
    n = len(rows)
    m = len(target)
    # columns are family members: solve M^T c = target
    aug = [[Fraction(rows[i][j]) for i in range(n)] + [Fraction(target[j])] for j in range(m)]
    rank, red, piv = _rank_and_rowspace(aug)
    if n in piv:
        return None
    c = [Fraction(0)] * n
    for row, pc in zip(red, piv):
        c[pc] = row[n]
    return c


@lru_cache(maxsize=None)
def family(q: int) -> list[VirtualCharacter]:
    """All omega-isotypic alternating sums of X~, X~', X~''."""
    out = []
    S = tor.build_torus("split", q, 2)
    for w in tor.all_characters(S):
        out.append(assemble_R("X~", q, w))
    gp = build_xtil_prime(q).gamma
    for i, vals in enumerate(abelian_characters(gp)):
        out.append(assemble_R("X~'", q, vals, label=f"Gamma'[{i}]"))
    N = tor.build_torus("nonsplit", q, 2)
    for w in tor.all_characters(N):
        out.append(assemble_R("X~''", q, w))
    return out


def span_check(q: int) -> dict:
    ctx = group_context(q)
    fam = family(q)
    rows = [v.multiplicities for v in fam]
    rank, red, piv = _rank_and_rowspace(rows)
    k = len(ctx.table)
    outside = []
    for i in range(k):
        e = [int(i == j) for j in range(k)]
        if not _in_rowspace(red, piv, e):
            outside.append(i)
    orthogonal = [i for i in range(k) if all(r[i] == 0 for r in rows)]
    reg = ctx.table.decompose_integral(regular_character(ctx.classes))
    sol = _solve_combination(rows, reg)
    return {
        "q": q,
        "family_size": len(fam),
        "family_sizes": {
            "X~": sum(1 for v in fam if v.variety == "X~"),
            "X~'": sum(1 for v in fam if v.variety == "X~'"),
            "X~''": sum(1 for v in fam if v.variety == "X~''"),
        },
        "num_irreducibles": k,
        "rank": rank,
        "outside_span": outside,
        "outside_span_degrees": [ctx.table.degrees[i] for i in outside],
        "orthogonal_to_family": orthogonal,
        "regular_in_span": sol is not None,
        "regular_solution": None if sol is None else [str(c) for c in sol],
        "integral": True,
    }
