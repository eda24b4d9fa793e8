from collections import Counter
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from ringrep.charkit import (
    ClassFunction,
    FiniteGroup,
    ProductCharacter,
    abelian_characters,
    character_table,
    conjugacy_classes,
    inflate,
    inner_product,
    isotypic_component,
    permutation_character,
    regular_character,
    trivial_character,
)
from ringrep.cyclotomic import ONE, Cyclotomic
from ringrep.dlgeom import group_context
from ringrep.matgrp import enumerate_sl_fixed


def symmetric_group(n):
    return FiniteGroup(list(permutations(range(n))), lambda a, b: tuple(a[b[i]] for i in range(n)),
                       encode=lambda x: x, name=f"S{n}")


def dihedral(n):
    elems = [(s, k) for s in (0, 1) for k in range(n)]

    def mul(a, b):
        s, k = a
        t, l = b
        return ((s + t) % 2, (k + (l if s == 0 else -l)) % n)

    return FiniteGroup(elems, mul, encode=lambda x: x, name=f"D{n}")


def quaternion():
    # Q8 inside SL2(F_3)
    G = FiniteGroup.from_matrices(enumerate_sl_fixed(2, 3, 1))
    order2 = [i for i in range(G.order) if G.element_order(i) in (1, 2, 4)]
    return FiniteGroup([G.elements[i] for i in order2], lambda a, b: a * b, encode=lambda g: g.encode())


@pytest.mark.parametrize("G,degrees", [
    (symmetric_group(3), [1, 1, 2]),
    (symmetric_group(4), [1, 1, 2, 3, 3]),
    (dihedral(5), [1, 1, 2, 2]),
    (dihedral(4), [1, 1, 1, 1, 2]),
    (FiniteGroup.cyclic(7), [1] * 7),
    (quaternion(), [1, 1, 1, 1, 2]),
])
def test_small_tables(G, degrees):
    cs = conjugacy_classes(G)
    table = character_table(cs)
    table.verify()
    assert sorted(table.degrees) == degrees
    assert table.degrees[0] == 1 and all(v == ONE for v in table[0].values)


def test_class_invariants():
    G = symmetric_group(4)
    cs = conjugacy_classes(G)
    assert sorted(cs.sizes) == [1, 3, 6, 6, 8]
    assert sum(cs.sizes) == 24
    assert all(24 % s == 0 for s in cs.sizes)
    assert sorted(Counter(cs.class_of).values()) == sorted(cs.sizes)


@pytest.mark.parametrize("q,degrees", [(2, [1, 1, 2]), (3, [1, 1, 1, 2, 2, 2, 3])])
def test_sl2_level_one(q, degrees):
    assert sorted(group_context(q, 1).table.degrees) == degrees


def test_sl2_level_two_q2_frozen():
    table = group_context(2).table
    assert sorted(table.degrees) == [1, 1, 1, 1, 2, 2, 3, 3, 3, 3]
    assert len(table.classes) == 10


def _mat_mul(q, A, B):
    return ((A[0] * B[0] + A[1] * B[2]) % q, (A[0] * B[1] + A[1] * B[3]) % q,
            (A[2] * B[0] + A[3] * B[2]) % q, (A[2] * B[1] + A[3] * B[3]) % q)


def clifford_degrees(q, level_one):
    """Degrees of SL2(F_q[e]/e^2) from orbits of SL2(F_q) on the dual of its abelian kernel."""
    sl = [g for g in product(range(q), repeat=4) if (g[0] * g[3] - g[1] * g[2]) % q == 1]
    inv = {g: (g[3], -g[1] % q, -g[2] % q, g[0]) for g in sl}
    lie = [(a, b, c, -a % q) for a, b, c in product(range(q), repeat=3)]
    seen, out = set(), Counter()
    for X in lie:
        if X in seen:
            continue
        orbit = {_mat_mul(q, _mat_mul(q, g, X), inv[g]) for g in sl}
        seen |= orbit
        if X == (0, 0, 0, 0):
            out.update(level_one)
            continue
        stab = [g for g in sl if _mat_mul(q, _mat_mul(q, g, X), inv[g]) == X]
        assert all(_mat_mul(q, a, b) == _mat_mul(q, b, a) for a in stab for b in stab)
        out[len(orbit)] += len(stab)
    return out


@pytest.mark.parametrize("q", [3])
def test_clifford_oracle(q):
    # odd q only: in characteristic 2 the trace form on sl2 is degenerate
    level_one = group_context(q, 1).table.degrees
    want = clifford_degrees(q, level_one)
    assert Counter(group_context(q).table.degrees) == want
    assert want[(q * q - 1) // 2] == 4 * q


def test_permutation_character_counts_fixed_points():
    G = symmetric_group(4)
    cs = conjugacy_classes(G)
    pts = list(range(4))
    chi = permutation_character(cs, lambda g, x: G.elements[g][x], pts)
    table = character_table(cs)
    mults = table.decompose(chi)
    assert sorted(m for m in mults if m) == [1, 1]
    assert inner_product(chi, trivial_character(cs)) == 1


def test_regular_character_decomposition():
    cs = conjugacy_classes(dihedral(6))
    table = character_table(cs)
    assert table.decompose_integral(regular_character(cs)) == table.degrees


def test_isotypic_projection_sums_back():
    G = symmetric_group(3)
    cs = conjugacy_classes(G)
    gamma = FiniteGroup.cyclic(4)
    values = [[Cyclotomic.rational(c.size * (t + 1)) for t in range(4)] for c in cs.classes]
    chi = ProductCharacter(cs, gamma, values)
    total = None
    for omega in abelian_characters(gamma):
        piece = isotypic_component(chi, lambda t, o=omega: o[t])
        total = piece if total is None else total + piece
    assert total == chi.at_identity()
    flat = inflate(trivial_character(cs), gamma)
    assert isotypic_component(flat, lambda t: ONE) == trivial_character(cs)


@given(st.integers(2, 12), st.integers(0, 11), st.integers(0, 11))
def test_cyclic_orthogonality(n, i, j):
    cs = conjugacy_classes(FiniteGroup.cyclic(n))
    table = character_table(cs)
    i, j = i % n, j % n
    assert inner_product(table[i], table[j]) == (1 if i == j else 0)


@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_inner_product_is_hermitian_bilinear(a, b):
    cs = conjugacy_classes(symmetric_group(4))
    table = character_table(cs)
    f = sum((table[k] * c for k, c in enumerate(a)), ClassFunction(cs, [Cyclotomic.rational(0)] * 5))
    g = sum((table[k] * c for k, c in enumerate(b)), ClassFunction(cs, [Cyclotomic.rational(0)] * 5))
    assert inner_product(f, g) == sum(x * y for x, y in zip(a, b))
    assert table.decompose(f) == [Fraction(x) for x in a]


def test_budget():
    with pytest.raises(ValueError):
        FiniteGroup(list(range(200001)), lambda a, b: (a + b) % 200001)
