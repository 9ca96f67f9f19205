import itertools

import pytest
from hypothesis import given, strategies as st

from cidade import GF, QQ, FieldEmbedding, extension
from cidade.fields import field_from_description, is_irreducible, is_prime

FIELDS = [GF(2), GF(3), GF(7), GF(4), GF(8), GF(9), GF(25), GF(27)]


def _polymul_mod(a, b, modulus, p):
    """Schoolbook product of coefficient lists (low degree first) reduced by
    a monic modulus; independent of the field tables."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    e = len(modulus) - 1
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e + 1):
                prod[k - e + i] = (prod[k - e + i] - c * modulus[i]) % p
    return (prod + [0] * e)[:e]


def test_is_prime_matches_trial_division():
    naive = [n for n in range(2, 200) if all(n % d for d in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == naive


@pytest.mark.parametrize("q", [6, 10, 12, 1])
def test_non_prime_power_rejected(q):
    with pytest.raises(ValueError):
        GF(q)


@pytest.mark.parametrize("F", [f for f in FIELDS if f.degree > 1], ids=repr)
def test_galois_multiplication_matches_polynomial_arithmetic(F):
    for a, b in itertools.product(F.elements(), repeat=2):
        expect = _polymul_mod(F._digits(a), F._digits(b), F.modulus, F.p)
        assert F._digits(F.mul(a, b)) == expect


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms_exhaustive(F):
    els = F.elements()
    assert len(els) == F.order
    for a in els:
        assert F.add(a, F.neg(a)) == F.zero
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one
    # multiplicative group is cyclic of order q - 1: a^(q-1) = 1
    for a in F.nonzero_elements():
        assert F.pow(a, F.order - 1) == F.one


@given(st.sampled_from(FIELDS), st.data())
def test_distributivity(F, data):
    a, b, c = (data.draw(st.sampled_from(F.elements())) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.sub(F.add(a, b), b) == a


def test_irreducibility_oracle():
    # x^2 + 1 is irreducible over F_3 (no roots), x^2 + 1 = (x+1)^2 over F_2
    assert is_irreducible([1, 0, 1], 3)
    assert not is_irreducible([1, 0, 1], 2)
    with pytest.raises(ValueError):
        GF(9, modulus=(2, 0, 1))  # x^2 + 2 = (x+1)(x+2) over F_3


@pytest.mark.parametrize("q,e", [(3, 2), (2, 3), (3, 3), (9, 2), (7, 2)])
def test_extension_embedding_is_a_homomorphism(q, e):
    F = GF(q)
    K, emb = extension(F, e)
    assert K.order == q**e
    images = [emb(a) for a in F.elements()]
    assert len(set(images)) == len(images)
    for a, b in itertools.product(F.elements(), repeat=2):
        assert emb(F.add(a, b)) == K.add(emb(a), emb(b))
        assert emb(F.mul(a, b)) == K.mul(emb(a), emb(b))


def test_embedding_rejects_incompatible_fields():
    with pytest.raises(ValueError):
        FieldEmbedding(GF(9), GF(27))
    with pytest.raises(ValueError):
        FieldEmbedding(GF(3), GF(4))


@pytest.mark.parametrize("F", FIELDS + [QQ], ids=repr)
def test_description_round_trip(F):
    assert field_from_description(F.describe()) == F


def test_rationals_exact():
    from fractions import Fraction
    a = QQ.div(QQ.from_int(1), QQ.from_int(3))
    assert QQ.add(a, QQ.add(a, a)) == QQ.one
    assert a == Fraction(1, 3)
