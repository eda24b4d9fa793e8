import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from ringrep.matgrp import (
    GroupElement,
    RootSystem,
    decompose_1_6,
    decompose_1_7,
    enumerate_sl_fixed,
    fixed_ring,
    mat_det,
    partition_1_8,
    root_inverse,
    sl_order,
    stratum_index,
)


def brute_sl(n, q, r):
    """Scan every matrix (oracle for small cases)."""
    R = fixed_ring(q, r)
    elems = list(R.elements())
    return {A for A in product(elems, repeat=n * n) if mat_det(R, n, A) == R.one}


@pytest.mark.parametrize("n,q,r", [(2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 2), (3, 2, 1)])
def test_enumeration_matches_brute_force(n, q, r):
    got = {g.raw for g in enumerate_sl_fixed(n, q, r)}
    assert got == brute_sl(n, q, r)


@pytest.mark.parametrize("q,r", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_group_order_formula(q, r):
    assert len(enumerate_sl_fixed(2, q, r)) == q ** (3 * (r - 1)) * (q ** 3 - q)


def test_sl3_order():
    assert sl_order(3, 2) == 168
    assert len(enumerate_sl_fixed(3, 2, 2)) == 2 ** 8 * 168


def test_budget():
    with pytest.raises(ValueError):
        enumerate_sl_fixed(3, 5, 3)
    with pytest.raises(ValueError):
        enumerate_sl_fixed(4, 2, 1)


def test_strata_partition_and_reduction():
    G = enumerate_sl_fixed(2, 2, 3)
    by_level = {}
    for g in G:
        by_level.setdefault(stratum_index(g), []).append(g)
    assert sum(len(v) for v in by_level.values()) == len(G)
    assert len(by_level[3]) == 1
    for g in G:
        for i in range(1, 4):
            assert g.reduce(i).is_identity() == (stratum_index(g) >= i)
    # kernels of reduction: |G^i| = q^(3(r-i))
    for i in range(1, 3):
        assert sum(1 for g in G if stratum_index(g) >= i) == 2 ** (3 * (3 - i))


SL2_3_2 = enumerate_sl_fixed(2, 3, 2)


@given(st.sampled_from(SL2_3_2), st.sampled_from(SL2_3_2), st.sampled_from(SL2_3_2))
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert mat_det(a.ring, 2, (a * b).raw) == a.ring.one
    assert (a * b).reduce(1) == a.reduce(1) * b.reduce(1)
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()


def test_from_rows_checks_determinant():
    R = fixed_ring(3, 2)
    with pytest.raises(ValueError):
        GroupElement.from_rows(R, [[1, 1], [1, 1]])
    g = GroupElement.from_rows(R, [[1, (0, 1)], [0, 1]])
    assert (g ** 3).is_identity()


def test_case_a_exhaustive_sl2():
    rs = RootSystem(2, fixed_ring(2, 3))
    for alpha, beta in product(rs.roots, repeat=2):
        for b in range(4):
            for c in range(max(0, 3 - b), 4):
                for u in rs.level_params(b):
                    for v in rs.level_params(c):
                        assert decompose_1_6(rs, alpha, u, b, beta, v, c).case == "a"


def test_1_7_rejects_bad_input():
    rs = RootSystem(3, fixed_ring(2, 3))
    z = rs.x((0, 1), (0, 1, 0))
    with pytest.raises(ValueError):
        decompose_1_7(rs, (0, 1), (1, 0, 0), 1, z)
    with pytest.raises(ValueError):
        decompose_1_7(rs, (1, 0), (1, 0, 0), 0, z)


def test_1_7_tau_is_multiplicative():
    rng = random.Random(7)
    rs = RootSystem(3, fixed_ring(2, 3))
    r = 3
    checked = 0
    for _ in range(300):
        alpha = rng.choice(rs.negative)
        a = 1
        xi = tuple([0] * (r - a - 1) + [rng.randint(0, 1) for _ in range(a + 1)])
        h0 = rs.height(root_inverse(alpha))

        def sample():
            params = {}
            for beta in rs.order:
                lvl = a + 1 if rs.height(beta) > h0 else a
                params[beta] = tuple(0 if i < lvl else rng.randint(0, 1) for i in range(r))
            return rs._product(params, rs.order)

        z1, z2 = sample(), sample()
        z = z1 * z2
        try:
            t12, _ = decompose_1_7(rs, alpha, xi, a, z)
        except ValueError:
            continue
        t1, _ = decompose_1_7(rs, alpha, xi, a, z1)
        t2, _ = decompose_1_7(rs, alpha, xi, a, z2)
        assert t12 == t1 * t2
        checked += 1
    assert checked > 100


def test_partition_heights_constant():
    rs = RootSystem(3, fixed_ring(2, 3))
    z = rs._product({(0, 1): (0, 1, 0), (1, 2): (0, 1, 1), (0, 2): (0, 0, 1)}, rs.order)
    a, I = partition_1_8(rs, z)
    assert a == 1
    assert I == frozenset({(0, 1), (1, 2)})
