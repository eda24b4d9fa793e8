"""Published dimension data for SL_2 at level 2 and comparisons with the computed models."""

from __future__ import annotations

from itertools import combinations

from ringrep import dlgeom
from ringrep import torus as tor
from ringrep.charkit import abelian_characters

PASS, MISMATCH, ERRATUM = "PASS", "MISMATCH", "ERRATUM"


def published_table(q: int) -> list[tuple[str, int, int]]:
    """Rows (dimension formula, dimension, count) of the published degree table."""
    if q % 2:
        rows = [
            ("1", 1, 1), ("q", q, 1), ("q+1", q + 1, (q - 3) // 2), ("(q+1)/2", (q + 1) // 2, 2),
            ("q-1", q - 1, (q - 1) // 2), ("(q-1)/2", (q - 1) // 2, 2),
            ("q^2+q", q * q + q, (q - 1) ** 2 // 2), ("q^2-q", q * q - q, (q * q - 1) // 2),
            ("(q^2-1)/2", (q * q - 1) // 2, 2 * q),
        ]
    else:
        rows = [
            ("1", 1, 1), ("q", q, 1), ("q+1", q + 1, (q - 2) // 2), ("q-1", q - 1, q // 2),
            ("q^2+q", q * q + q, (q - 1) * (q - 2) // 2), ("(q^2+q)/2", (q * q + q) // 2, 2 * (q - 1)),
            ("q^2-q", q * q - q, (q * q - q) // 2), ("(q^2-q)/2", (q * q - q) // 2, 2 * (q - 1)),
            ("q^2-1", q * q - 1, q),
        ]
    return rows


def erratum_degree(q: int):
    return (q * q - 1) // 2 if q % 2 else None


def table_check(q: int, degrees: list[int]) -> list[dict]:
    """Compare degree counts.  Rows with equal numeric dimension are merged."""
    expected, formulas = {}, {}
    for formula, d, c in published_table(q):
        expected[d] = expected.get(d, 0) + c
        formulas.setdefault(d, []).append(formula)
    computed = {}
    for d in degrees:
        computed[d] = computed.get(d, 0) + 1
    bad = erratum_degree(q)
    out = []
    for d in sorted(set(expected) | set(computed)):
        e, c = expected.get(d, 0), computed.get(d, 0)
        if e == c:
            status = PASS
        elif d == bad:
            status = ERRATUM
        else:
            status = MISMATCH
        out.append({"degree": d, "rows": formulas.get(d, []), "published": e, "computed": c, "status": status})
    return out


# -- X~ --------------------------------------------------------------------------------

def _level_one_trivial(T, omega) -> bool:
    vals = omega.values()
    return all(vals[i] == 1 for i in T.ct)


def _is_order_two(omega) -> bool:
    return (omega * omega).is_trivial()


def _xprime_pieces(q):
    gp = dlgeom.build_xtil_prime(q).gamma
    return [dlgeom.assemble_R("X~'", q, v, label=f"Gamma'[{i}]") for i, v in enumerate(abelian_characters(gp))]


def _xprime_square_one(q) -> int:
    gp = dlgeom.build_xtil_prime(q).gamma
    return sum(1 for v in abelian_characters(gp) if all(x * x == 1 for x in v))


def _match_rest(mults, expect_degrees, degrees, pieces, k):
    """Find k X~' pieces whose removal leaves exactly one copy each of irreducibles of the given degrees."""
    for S in combinations(range(len(pieces)), k):
        rest = list(mults)
        for s in S:
            rest = [a - b for a, b in zip(rest, pieces[s].multiplicities)]
        if any(x < 0 for x in rest) or any(x > 1 for x in rest):
            continue
        got = sorted(degrees[i] for i, x in enumerate(rest) if x)
        if got == sorted(expect_degrees):
            return list(S)
    return None


def xtil_expected(q: int, T, omega):
    """(case, degrees of the non-X~' part, number of X~' pieces)."""
    triv1 = _level_one_trivial(T, omega)
    two = _is_order_two(omega)
    one = omega.is_trivial()
    k = _xprime_square_one(q)
    if q % 2:
        if not triv1:
            return "level-1 nontrivial", [q * q + q], 0
        if one:
            return "trivial", [1, q], k
        if two:
            return "order 2", [(q + 1) // 2, (q + 1) // 2], k
        return "level-1 trivial", [q + 1], k
    if one:
        return "trivial", [1, q], 1
    if two:
        return "order 2", [(q * q + q) // 2] * 2, 0
    if triv1:
        return "level-1 trivial", [q + 1], 1
    return "level-1 nontrivial", [q * q + q], 0


def xtil_check(q: int) -> list[dict]:
    T = tor.build_torus("split", q, 2)
    degrees = dlgeom.group_context(q).table.degrees
    pieces = _xprime_pieces(q)
    out = []
    for w in tor.all_characters(T):
        v = dlgeom.assemble_R("X~", q, w)
        case, exp, k = xtil_expected(q, T, w)
        S = _match_rest(v.multiplicities, exp, degrees, pieces, k)
        out.append({
            "omega": list(w.exps), "case": case, "expected_degrees": exp, "xprime_pieces": S,
            "constituents": v.constituents(dlgeom.group_context(q).table),
            "status": PASS if S is not None else MISMATCH,
        })
    return out


# -- X~' --------------------------------------------------------------------------------

def xprime_check(q: int) -> list[dict]:
    """Each piece irreducible of degree (q^2-1)/2 (odd q) or q^2-1 (even q), pairwise distinct."""
    want = (q * q - 1) // 2 if q % 2 else q * q - 1
    pieces = _xprime_pieces(q)
    matches = [p.irreducible_match() for p in pieces]
    seen = {}
    for m in matches:
        if m:
            seen[m[0]] = seen.get(m[0], 0) + 1
    table = dlgeom.group_context(q).table
    out = []
    for p, m in zip(pieces, matches):
        ok = m is not None and m[1] == 1 and table.degrees[m[0]] == want and seen[m[0]] == 1
        out.append({
            "omega": p.label, "degree": p.degree,
            "constituents": p.constituents(table),
            "status": PASS if ok else MISMATCH,
        })
    return out


# -- X~'' -------------------------------------------------------------------------------

def xtilpp_expected(q: int, T, omega):
    """(positive degrees, negative degrees) of sum (-1)^j H^j_c(X~'')_omega."""
    triv1 = _level_one_trivial(T, omega)
    two = _is_order_two(omega)
    if omega.is_trivial():
        return [1], [q]
    if q % 2:
        if not triv1:
            return [q * q - q], []
        if two:
            return [], [(q - 1) // 2] * 2
        return [], [q - 1]
    if two:
        return [(q * q - q) // 2] * 2, []
    if not triv1:
        return [q * q - q], []
    return [], [q - 1]


def xtilpp_check(q: int) -> list[dict]:
    T = tor.build_torus("nonsplit", q, 2)
    table = dlgeom.group_context(q).table
    out = []
    for w in tor.all_characters(T):
        v = dlgeom.assemble_R("X~''", q, w)
        pos, neg = xtilpp_expected(q, T, w)
        got_pos = sorted(table.degrees[i] for i, m in enumerate(v.multiplicities) for _ in range(max(m, 0)))
        got_neg = sorted(table.degrees[i] for i, m in enumerate(v.multiplicities) for _ in range(max(-m, 0)))
        ok = got_pos == sorted(pos) and got_neg == sorted(neg) and all(abs(m) <= 1 for m in v.multiplicities)
        out.append({
            "omega": list(w.exps), "expected": {"+": pos, "-": neg}, "computed": {"+": got_pos, "-": got_neg},
            "status": PASS if ok else MISMATCH,
        })
    return out


def lefschetz_identity_check(q: int) -> dict:
    """L(1,1) against the alternating sum of the published dimensions."""
    data = dlgeom.lefschetz_xtilpp(q)
    T = data["torus"]
    L11 = data["values"][0][T.group.identity]
    total = 0
    for w in tor.all_characters(T):
        pos, neg = xtilpp_expected(q, T, w)
        total += sum(pos) - sum(neg)
    return {"L(1,1)": L11, "published_sum": total, "status": PASS if L11 == total else MISMATCH}
