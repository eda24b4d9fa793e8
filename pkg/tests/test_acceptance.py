"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""

import sys
import time

import pytest

import ringrep
from ringrep import charkit, cli, dlgeom, gfield, lemmas, matgrp, torus, verify
from ringrep.charkit import inner_product


def clear_caches():
    for mod in (gfield, matgrp, charkit, torus, dlgeom, verify, lemmas, cli, ringrep):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


def criterion_1():
    clear_caches()
    t0 = time.perf_counter()
    got = {}
    for q in (2, 3):
        for r in (1, 2):
            got[(q, r)] = len(matgrp.enumerate_sl_fixed(2, q, r))
    dt = time.perf_counter() - t0
    ok = all(n == q ** (3 * (r - 1)) * (q ** 3 - q) for (q, r), n in got.items()) and dt < 1
    return ok, f"orders {got}, {dt:.2f}s"


def criterion_2():
    clear_caches()
    t0 = time.perf_counter()
    table = dlgeom.group_context(2).table
    dt = time.perf_counter() - t0
    rows = verify.table_check(2, table.degrees)
    ok = (sorted(table.degrees) == [1, 1, 1, 1, 2, 2, 3, 3, 3, 3]
          and all(r["status"] == verify.PASS for r in rows)
          and sum(d * d for d in table.degrees) == 48 and dt < 10)
    return ok, f"degrees {sorted(table.degrees)}, {dt:.2f}s"


def criterion_3():
    clear_caches()
    t0 = time.perf_counter()
    table = dlgeom.group_context(3).table
    dt = time.perf_counter() - t0
    rows = verify.table_check(3, table.degrees)
    others = [r for r in rows if r["degree"] != 4]
    deg4 = next(r for r in rows if r["degree"] == 4)
    ok = (all(r["status"] == verify.PASS for r in others)
          and sum(d * d for d in table.degrees) == 648 and dt < 60)
    return ok, (f"degree-4 count computed {deg4['computed']} (published {deg4['published']}), "
                f"sum deg^2 = {sum(d * d for d in table.degrees)}, {dt:.2f}s")


def criterion_4():
    items = verify.xtil_check(3)
    T = torus.build_torus("split", 3, 2)
    table = dlgeom.group_context(3).table
    big = []
    for w in torus.all_characters(T):
        if not verify._level_one_trivial(T, w):
            m = dlgeom.assemble_R("X~", 3, w).irreducible_match()
            big.append(m is not None and m[1] == 1 and table.degrees[m[0]] == 12)
    ok = all(x["status"] == verify.PASS for x in items) and big and all(big)
    return ok, f"{sum(x['status'] == verify.PASS for x in items)}/{len(items)} pieces match, {len(big)} of degree 12"


def criterion_5():
    X = dlgeom.build_xtil_prime(3)
    items = verify.xprime_check(3)
    good = sum(x["status"] == verify.PASS for x in items)
    ok = len(X) == 24 and good == len(items)
    bad = [(x["omega"], [(i, d, m) for i, d, m in x["constituents"]]) for x in items if x["status"] != verify.PASS]
    return ok, f"{len(X)} components, {good}/{len(items)} pieces irreducible of degree 4; others {bad}"


def criterion_6():
    S = dlgeom.enumerate_s00(3)
    stabs = [len(S.stabilizer(p)) for p in range(len(S))]
    ok = len(S) == 24 and S.orbit_count() == 1 and set(stabs) == {1}
    return ok, f"{len(S)} points, {S.orbit_count()} orbit, stabilizer orders {sorted(set(stabs))}"


def criterion_7():
    clear_caches()
    t0 = time.perf_counter()
    T = torus.build_torus("nonsplit", 3, 2)
    table = dlgeom.group_context(3).table
    reg = [w for w in torus.all_characters(T) if torus.is_regular(w)]
    stabs = all(torus.weyl_stabilizer(w) == ["1"] for w in reg)
    Rs = [dlgeom.assemble_R("X~''", 3, w) for w in reg]
    matches = [R.irreducible_match() for R in Rs]
    single = all(m is not None and table.degrees[m[0]] == 6 for m in matches)
    pairs = set()
    for w, m in zip(reg, matches):
        partner = matches[reg.index(w.inverse())]
        if m is not None and partner == m:
            pairs.add(frozenset({w, w.inverse()}))
    distinct = {m[0] for m in matches if m}
    G = dlgeom.gram(Rs)
    gram_ok = all(G[i][j] == torus.predicted_gram(a, b) for i, a in enumerate(reg) for j, b in enumerate(reg))
    dt = time.perf_counter() - t0
    ok = len(reg) == 8 and stabs and single and len(pairs) == 4 and len(distinct) == 4 and gram_ok and dt < 300
    return ok, (f"{len(reg)} regular, trivial stabilizers {stabs}, {len(pairs)} inverse pairs, "
                f"{len(distinct)} distinct irreducibles, Gram = predicted {gram_ok}, {dt:.1f}s")


def criterion_8():
    rep = cli.disjointness_report(3, n_max=4)
    ok = rep["pairs_checked"] > 0 and not rep["violations"]
    return ok, f"{rep['pairs_checked']} non-equivalent pairs, {len(rep['violations'])} nonzero inner products"


def criterion_9():
    clear_caches()
    t0 = time.perf_counter()
    try:
        rep = lemmas.run_lemma_trials(3, 2, 3, 1000, 42)
        ok = rep["ok"]
        detail = f"1.6a {rep['1.6a']}, 1.6bc {rep['1.6bc']}, uniqueness {rep['1.6c_uniqueness_sl2']}, " \
                 f"1.7 {rep['1.7']}, 1.8 {rep['1.8']} + cover {rep['1.8_cover']}"
    except AssertionError as exc:
        ok, detail = False, str(exc)
    dt = time.perf_counter() - t0
    return ok and dt < 60, f"{detail}, {dt:.1f}s"


def criterion_10():
    reps = {}
    for q in (2, 3):
        a = dlgeom.span_check(q)
        clear_caches()
        b = dlgeom.span_check(q)
        if a != b:
            return False, f"span report at q={q} is not deterministic"
        reps[q] = a
    integral = all(isinstance(m, int) for q in (2, 3) for v in dlgeom.family(q) for m in v.multiplicities)
    ok = integral and reps[2]["family_size"] == 10
    r2, r3 = reps[2], reps[3]
    return ok, (f"q=2: rank {r2['rank']} of {r2['family_size']}, regular in span {r2['regular_in_span']}; "
                f"q=3: rank {r3['rank']}, outside span {r3['outside_span']}, "
                f"orthogonal to family {r3['orthogonal_to_family']}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def report(n, ok, detail):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + report(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(report(n, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
