import pytest
from hypothesis import given, strategies as st

from ringrep.gfield import FieldElement, field_for, frobenius, least_irreducible, make_tower

TOWERS = [(2, 1), (2, 4), (3, 2), (3, 4), (5, 2), (7, 3), (2, 6)]


def poly_mulmod(p, modulus, a, b):
    """Schoolbook product of digit lists modulo a monic polynomial (oracle)."""
    K = len(modulus) - 1
    prod = [0] * (2 * K)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, K - 1, -1):
        c = prod[i]
        if c:
            for j in range(K + 1):
                prod[i - K + j] = (prod[i - K + j] - c * modulus[j]) % p
    return prod[:K]


def digits(p, K, x):
    return [(x // p ** i) % p for i in range(K)]


def undigits(p, ds):
    return sum(d * p ** i for i, d in enumerate(ds))


@pytest.mark.parametrize("p,K", TOWERS)
def test_mul_matches_polynomial_oracle(p, K):
    F = make_tower(p, K)
    step = max(1, F.size // 40)
    for x in range(0, F.size, step):
        for y in range(1, F.size, step + 1):
            want = undigits(p, poly_mulmod(p, F.modulus, digits(p, K, x), digits(p, K, y)))
            assert F.mul(x, y) == want


@pytest.mark.parametrize("p,K", TOWERS)
def test_add_is_digitwise(p, K):
    F = make_tower(p, K)
    for x in range(0, F.size, max(1, F.size // 30)):
        for y in range(0, F.size, max(1, F.size // 25)):
            want = undigits(p, [(a + b) % p for a, b in zip(digits(p, K, x), digits(p, K, y))])
            assert F.add(x, y) == want


def test_modulus_is_least_irreducible():
    # x^2 + 1 over F_3, x^2 + x + 1 over F_2, x^4 + x + 1 over F_2 (little-endian)
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(2, 4) == (1, 1, 0, 0, 1)


@pytest.mark.parametrize("p,K", TOWERS)
def test_prime_field_is_range_p(p, K):
    F = make_tower(p, K)
    assert F.subfield(p) == list(range(p))
    for a in range(p):
        for b in range(p):
            assert F.mul(a, b) == a * b % p


@pytest.mark.parametrize("p,K", TOWERS)
def test_subfield_sizes(p, K):
    F = make_tower(p, K)
    for d in range(1, K + 1):
        if K % d == 0:
            sub = F.subfield(p ** d)
            assert len(sub) == p ** d
            assert all(F.frob(x, p ** d) == x for x in sub)


def test_field_for_prime_power():
    assert field_for(4, 2).size == 16
    assert field_for(9, 1).size == 9
    with pytest.raises(ValueError):
        field_for(6, 1)


def test_budget_rejected():
    with pytest.raises(ValueError):
        make_tower(4, 2)
    with pytest.raises(ValueError):
        make_tower(2, 64)


field_params = st.sampled_from(TOWERS).flatmap(
    lambda pk: st.tuples(st.just(pk), *(st.integers(0, pk[0] ** pk[1] - 1) for _ in range(3)))
)


@given(field_params)
def test_field_axioms(data):
    (p, K), x, y, z = data
    F = make_tower(p, K)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.add(x, F.neg(x)) == 0
    if x:
        assert F.mul(x, F.inv(x)) == 1
        assert F.exp(F.log(x)) == x


@given(field_params)
def test_frobenius_is_additive_and_multiplicative(data):
    (p, K), x, y, _ = data
    F = make_tower(p, K)
    assert F.frob(F.add(x, y), p) == F.add(F.frob(x, p), F.frob(y, p))
    assert F.frob(F.mul(x, y), p) == F.mul(F.frob(x, p), F.frob(y, p))
    assert F.frob(x, p ** K) == x


@given(field_params)
def test_field_element_wrapper(data):
    (p, K), x, y, _ = data
    F = make_tower(p, K)
    a, b = FieldElement(F, x), FieldElement(F, y)
    assert (a * b).value == F.mul(x, y)
    assert (a - b + b) == a
    assert frobenius(a, p).value == F.frob(x, p)
