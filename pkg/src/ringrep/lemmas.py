"""Seeded trial harness for the commutation calculus in matgrp."""

from __future__ import annotations

import random
from itertools import combinations

from ringrep.matgrp import (
    RootSystem,
    all_orders,
    decompose_1_6,
    decompose_1_7,
    fixed_ring,
    partition_1_8,
    root_inverse,
    root_mul,
    solve_1_6c_exhaustive,
    stratum_index,
    z_group,
)


def _random_level(rng, rs, level):
    """A uniform element of eps^level R."""
    R = rs.ring
    field = R.coefficient_field()
    return tuple(0 if i < level else rng.choice(field) for i in range(R.r))


def trials_1_6a(rs: RootSystem, trials: int, rng) -> int:
    r = rs.ring.r
    roots = rs.roots
    for _ in range(trials):
        alpha, beta = rng.choice(roots), rng.choice(roots)
        b = rng.randint(0, r)
        c = rng.randint(max(0, r - b), r)
        cert = decompose_1_6(rs, alpha, _random_level(rng, rs, b), b, beta, _random_level(rng, rs, c), c)
        if cert.case != "a":
            raise AssertionError(f"expected case (a), got {cert.case}")
    return trials


def _bc_pairs(r):
    b_pairs = [(b, c) for b in range(r + 1) for c in range(r + 1) if b + c < r]
    c_pairs = [(b, c) for b, c in b_pairs if b + c >= r - 1 and b + 2 * c >= r]
    return b_pairs, c_pairs


def trials_1_6bc(rs: RootSystem, trials: int, rng) -> dict:
    r = rs.ring.r
    roots = rs.roots
    b_pairs, c_pairs = _bc_pairs(r)
    counts = {"b": 0, "c": 0}
    for k in range(trials):
        if k % 2 == 0 or not c_pairs:
            alpha = rng.choice(roots)
            beta = rng.choice([x for x in roots if root_mul(alpha, x) != 1])
            b, c = rng.choice(b_pairs)
            want = "b"
        else:
            alpha = rng.choice(roots)
            beta = root_inverse(alpha)
            b, c = rng.choice(c_pairs)
            want = "c"
        cert = decompose_1_6(rs, alpha, _random_level(rng, rs, b), b, beta, _random_level(rng, rs, c), c)
        if cert.case != want:
            raise AssertionError(f"expected case ({want}), got {cert.case}")
        counts[want] += 1
    return counts


def exhaustive_1_6c_uniqueness(q: int = 2, r: int = 2) -> int:
    """Every admissible pair in SL_2 has exactly one (tau, u); returns the number checked."""
    rs = RootSystem(2, fixed_ring(q, r))
    R = rs.ring
    _, c_pairs = _bc_pairs(r)
    checked = 0
    for alpha in rs.roots:
        beta = root_inverse(alpha)
        for b, c in c_pairs:
            for u in rs.level_params(b):
                if R.valuation(u) < b:
                    continue
                for v in rs.level_params(c):
                    sols = solve_1_6c_exhaustive(rs, alpha, u, beta, v)
                    if len(sols) != 1:
                        raise AssertionError(f"{len(sols)} solutions for {alpha}, {u}, {v}")
                    cert = decompose_1_6(rs, alpha, u, b, beta, v, c)
                    if (cert.tau, cert.u) != sols[0]:
                        raise AssertionError("certificate differs from the unique solution")
                    checked += 1
    return checked


def random_z(rs: RootSystem, a: int, alpha, rng):
    """Upper unitriangular z in level a satisfying the height hypothesis for alpha."""
    h0 = rs.height(root_inverse(alpha))
    params = {}
    for beta in rs.order:
        lvl = a + 1 if rs.height(beta) > h0 else a
        params[beta] = _random_level(rng, rs, min(lvl, rs.ring.r))
    return rs._product(params, rs.order)


def trials_1_7(rs: RootSystem, trials: int, rng) -> int:
    r = rs.ring.r
    for _ in range(trials):
        alpha = rng.choice(rs.negative)
        a = rng.randint(1, r - 1)
        xi = _random_level(rng, rs, r - a - 1)
        z = random_z(rs, a, alpha, rng)
        if stratum_index(z) < a:
            raise AssertionError("sampled z below level a")
        decompose_1_7(rs, alpha, xi, a, z)
    return trials


def cells_1_8(rs: RootSystem, order=None) -> dict:
    """Map each z in Z_r^1 - {1} to its cell (a, I_z)."""
    out = {}
    for z in z_group(rs, 1):
        if not z.is_identity():
            out[z] = partition_1_8(rs, z, order=order)
    return out


def check_partition_1_8(rs: RootSystem) -> dict:
    """Exact cover: every z lands in exactly one admissible cell, for every order."""
    r = rs.ring.r
    phi = rs.positive
    admissible = set()
    for k in range(1, len(phi) + 1):
        for I in combinations(phi, k):
            if len({rs.height(x) for x in I}) == 1:
                for a in range(1, r):
                    admissible.add((a, frozenset(I)))
    ref = cells_1_8(rs)
    for cell in ref.values():
        if cell not in admissible:
            raise AssertionError(f"cell {cell} is not admissible")
    for order in all_orders(rs):
        if cells_1_8(rs, order) != ref:
            raise AssertionError(f"cells depend on the order {order}")
    expected = len(z_group(rs, 1)) - 1
    if len(ref) != expected:
        raise AssertionError("cells do not cover Z_r^1 - {1}")
    used = {}
    for cell in ref.values():
        used[cell] = used.get(cell, 0) + 1
    return {"elements": len(ref), "cells": len(used), "admissible": len(admissible)}


def trials_1_8(rs: RootSystem, trials: int, rng) -> int:
    Z = [z for z in z_group(rs, 1) if not z.is_identity()]
    orders = all_orders(rs)
    for _ in range(trials):
        z = rng.choice(Z)
        if partition_1_8(rs, z) != partition_1_8(rs, z, order=rng.choice(orders)):
            raise AssertionError("I_z depends on the order")
    return trials


def run_lemma_trials(n: int = 3, q: int = 2, r: int = 3, trials: int = 1000, seed: int = 42) -> dict:
    rng = random.Random(seed)
    rs = RootSystem(n, fixed_ring(q, r))
    report = {"n": n, "q": q, "r": r, "trials": trials, "seed": seed}
    report["1.6a"] = trials_1_6a(rs, trials, rng)
    report["1.6bc"] = trials_1_6bc(rs, trials, rng)
    report["1.6c_uniqueness_sl2"] = exhaustive_1_6c_uniqueness(2, 2)
    report["1.7"] = trials_1_7(rs, trials, rng)
    report["1.8"] = trials_1_8(rs, trials, rng)
    report["1.8_cover"] = check_partition_1_8(rs)
    report["ok"] = True
    return report
