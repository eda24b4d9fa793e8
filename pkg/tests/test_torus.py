from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from ringrep import torus as tor
from ringrep.charkit import FiniteGroup
from ringrep.cyclotomic import ONE
from ringrep.matgrp import GroupElement, mat_frob


def det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n, out = len(M), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            out = -out
        out *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return out


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_normal_form(rows):
    diag, V, Vi = tor.smith_normal_form(rows, 3)
    nz = [d for d in diag if d]
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    prod_ = 1
    for d in diag:
        prod_ *= d
    assert prod_ == abs(det(rows))
    eye = [[sum(V[i][k] * Vi[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert eye == [[int(i == j) for j in range(3)] for i in range(3)]


@given(st.integers(1, 12), st.integers(1, 12))
def test_cyclic_decomposition_of_products(a, b):
    G = FiniteGroup(list(product(range(a), range(b))), lambda x, y: ((x[0] + y[0]) % a, (x[1] + y[1]) % b),
                    encode=lambda x: x)
    gens, orders = tor.cyclic_decomposition(G)
    want = [d for d in (gcd(a, b), a * b // gcd(a, b)) if d > 1]
    assert orders == want
    assert len(G.closure(gens)) == a * b


@pytest.mark.parametrize("kind,q,r,order", [
    ("split", 2, 1, 1), ("split", 2, 2, 2), ("split", 3, 1, 2), ("split", 3, 2, 6), ("split", 5, 2, 20),
    ("nonsplit", 2, 1, 3), ("nonsplit", 2, 2, 6), ("nonsplit", 3, 1, 4), ("nonsplit", 3, 2, 12),
    ("split", 2, 3, 4), ("nonsplit", 2, 3, 12),
])
def test_torus_orders(kind, q, r, order):
    T = tor.build_torus(kind, q, r)
    assert T.order == order
    assert T.group.is_abelian()
    for t in T.elements:
        assert mat_frob(T.base, t.raw) == t.raw


def test_bad_arguments():
    with pytest.raises(ValueError):
        tor.build_torus("twisted", 3, 2)
    with pytest.raises(ValueError):
        tor.build_torus("split", 7, 2)


@pytest.mark.parametrize("kind,q", [("split", 3), ("nonsplit", 3), ("nonsplit", 2)])
def test_character_group(kind, q):
    T = tor.build_torus(kind, q, 2)
    chars = tor.all_characters(T)
    assert len(chars) == T.order
    for a in chars[:4]:
        for b in chars[:4]:
            ab = a * b
            for t in range(T.order):
                assert ab.value_index(t) == a.value_index(t) * b.value_index(t)
        assert (a * a.inverse()).is_trivial()
        assert tor.character_from_values(T, [a.exponent_of(i) for i in range(T.order)]) == a


def test_multiplicativity_on_group():
    T = tor.build_torus("nonsplit", 3, 2)
    G = T.group
    for theta in tor.all_characters(T):
        for i in range(T.order):
            for j in range(T.order):
                assert theta.value_index(G.mul(i, j)) == theta.value_index(i) * theta.value_index(j)


@pytest.mark.parametrize("kind,count", [("nonsplit", 8), ("split", 4)])
def test_regular_counts_q3(kind, count):
    T = tor.build_torus(kind, 3, 2)
    assert sum(tor.is_regular(w) for w in tor.all_characters(T)) == count


def test_regularity_needs_level_two():
    with pytest.raises(ValueError):
        tor.is_regular(tor.all_characters(tor.build_torus("split", 3, 1))[0])


@pytest.mark.parametrize("kind", ["split", "nonsplit"])
def test_norm_map_is_surjective_homomorphism(kind):
    T = tor.build_torus(kind, 3, 2)
    pts = tor.torus_points(T, 2)
    images = {tor.norm_map(T, t, 2) for t in pts}
    assert images == set(T.elements)
    assert len(pts) % T.order == 0


def test_weyl_data():
    S, N = tor.build_torus("split", 3, 2), tor.build_torus("nonsplit", 3, 2)
    assert set(tor.weyl_orbit_data(S, S).fixed_reps) == {"1", "s"}
    assert set(tor.weyl_orbit_data(N, N).fixed_reps) == {"1", "s"}
    assert tor.weyl_orbit_data(S, N).fixed_reps == {}
    for w in tor.all_characters(N):
        if tor.is_regular(w):
            assert tor.weyl_stabilizer(w) == ["1"]
            assert tor.predicted_gram(w, w) == 1
            assert tor.predicted_gram(w, w.inverse()) == 1
    for a in tor.all_characters(S):
        for b in tor.all_characters(N):
            assert tor.predicted_gram(a, b) == 0


def test_weyl_twist_by_s_inverts():
    N = tor.build_torus("nonsplit", 3, 2)
    s = tor.weyl_orbit_data(N, N).fixed_reps["s"]
    for w in tor.all_characters(N):
        assert tor.weyl_twist(w, s, N) == w.inverse()


def test_norm_orbit_relation():
    N = tor.build_torus("nonsplit", 3, 2)
    chars = tor.all_characters(N)
    for w in chars[:6]:
        assert tor.norm_orbit_equivalent(w, w)
        assert tor.norm_orbit_equivalent(w, w.inverse())
    ok, n = tor.norm_orbit_equivalent(chars[1], chars[11], witness=True)
    assert ok and n == 1


def test_norm_map_at_n1_is_identity():
    T = tor.build_torus("split", 3, 2)
    pts = tor.torus_points(T, 1)
    assert {tor.norm_map(T, t, 1).raw for t in pts} == {t.raw for t in T.elements}
    for t in pts:
        assert tor.norm_map(T, t, 1).raw == t
    assert isinstance(tor.norm_map(T, pts[0], 1), GroupElement)
    assert tor.all_characters(T)[0](T.elements[0]) == ONE
