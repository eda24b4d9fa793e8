import pytest
from hypothesis import given, strategies as st

from ringrep.gfield import make_tower
from ringrep.trunc import TruncRing, reduce, units

RINGS = [(2, 1, 2, 1), (2, 2, 3, 1), (3, 2, 2, 2), (3, 4, 2, 4), (5, 1, 3, 1), (2, 4, 3, 2)]


def ring(params):
    p, K, r, m = params
    return TruncRing(make_tower(p, K), r, p, m)


def elements(R):
    coeffs = R.coefficient_field()
    return st.tuples(*(st.sampled_from(coeffs) for _ in range(R.r)))


def ring_and(n):
    return st.sampled_from(RINGS).flatmap(lambda s: st.tuples(st.just(s), *(elements(ring(s)) for _ in range(n))))


@given(ring_and(3))
def test_ring_axioms(data):
    params, x, y, z = data
    R = ring(params)
    assert R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))
    assert R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))
    assert R.mul(x, y) == R.mul(y, x)
    assert R.mul(x, R.one) == x


@given(ring_and(1))
def test_units_and_inverse(data):
    params, x = data
    R = ring(params)
    assert R.is_unit(x) == (x[0] != 0)
    if R.is_unit(x):
        assert R.mul(x, R.inv(x)) == R.one


@given(ring_and(2))
def test_valuation_is_additive(data):
    params, x, y = data
    R = ring(params)
    v = R.valuation(x) + R.valuation(y)
    assert R.valuation(R.mul(x, y)) == min(v, R.r)


@given(ring_and(2))
def test_frobenius_is_ring_map(data):
    params, x, y = data
    R = ring(params)
    assert R.frobenius(R.mul(x, y)) == R.mul(R.frobenius(x), R.frobenius(y))
    assert R.frobenius(x, R.m) == x


@pytest.mark.parametrize("params", RINGS)
def test_counts(params):
    R = ring(params)
    Q = R.coeff_order
    assert len(list(R.elements())) == Q ** R.r
    assert len(list(R.units())) == (Q - 1) * Q ** (R.r - 1)
    assert sum(1 for x in R.elements() if R.is_frobenius_fixed(x)) == R.q ** R.r


def test_eps_is_nilpotent():
    R = ring((3, 2, 3, 1))
    assert R.pow(R.eps, 2) != R.zero
    assert R.pow(R.eps, 3) == R.zero


def test_reduce_is_a_homomorphism():
    R = ring((3, 2, 3, 1))
    xs = list(R.elements())[::5]
    for x in xs:
        for y in xs:
            assert R.reduce(R.mul(x, y), 2) == TruncRing(R.tower, 2, 3).mul(R.reduce(x, 2), R.reduce(y, 2))


def test_element_wrapper():
    R = ring((3, 2, 2, 1))
    a = R.element((2, 1))
    assert (a * a.inverse()).coeffs == R.one
    assert reduce(a, 1).coeffs == (2,)
    assert len(list(units(R))) == 6


def test_bad_rings():
    with pytest.raises(ValueError):
        TruncRing(make_tower(2, 2), 0, 2)
    with pytest.raises(ValueError):
        TruncRing(make_tower(2, 2), 2, 2, 3)
