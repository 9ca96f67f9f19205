import itertools

import pytest
from hypothesis import given, strategies as st

from cidade import GF, QQ, PolyRing, exact_divide, parse_matrix, parse_polynomial
from cidade.errors import NotDivisible, NotHomogeneous, ParseError, RingMismatch
from cidade.poly import parse_polynomial_list

from strategies import evaluate, polynomials

R7 = PolyRing(GF(7), ["x", "y", "z"])
R9 = PolyRing(GF(9), ["x", "y"])
POINTS7 = list(itertools.product(range(7), repeat=3))[::17]


@given(polynomials(R7), polynomials(R7), polynomials(R7))
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == R7.zero()
    assert p * R7.one() == p


@given(polynomials(R7), polynomials(R7))
def test_evaluation_is_a_homomorphism(p, q):
    F = R7.field
    for pt in POINTS7:
        assert evaluate(p * q, pt) == F.mul(evaluate(p, pt), evaluate(q, pt))
        assert evaluate(p + q, pt) == F.add(evaluate(p, pt), evaluate(q, pt))


@given(polynomials(R7))
def test_format_parse_round_trip(p):
    assert parse_polynomial(R7, str(p)) == p


@given(polynomials(R9))
def test_format_parse_round_trip_galois(p):
    assert parse_polynomial(R9, str(p)) == p


@given(polynomials(R7, max_terms=3), polynomials(R7, max_terms=3))
def test_exact_divide_recovers_cofactor(p, f):
    if f.is_zero():
        return
    assert exact_divide(p * f, f) == p


def test_exact_divide_rejects_non_multiple():
    x, y, _ = R7.gens()
    with pytest.raises(NotDivisible):
        exact_divide(x**2 + y, x)


def test_parse_examples():
    x, y, z = R7.gens()
    assert parse_polynomial(R7, "x^2 + 3*x*y") == x**2 + 3 * x * y
    assert parse_polynomial(R7, "3xy - (x+y)^2") == 3 * x * y - (x + y) ** 2
    assert parse_polynomial(R7, "15") == R7(1)
    assert parse_polynomial_list(R7, "x^2, y^2 z") == [x**2, y**2, z]
    assert parse_polynomial_list(R7, "x y") == [x, y]
    a = parse_polynomial(R9, "a")
    F = R9.field
    # a is a root of the defining polynomial of GF(9)
    acc = F.zero
    for c in reversed(F.modulus):
        acc = F.add(F.mul(acc, a.constant_term()), c)
    assert acc == F.zero


def test_parse_matrix_shapes():
    rows = parse_matrix(R7, "[x, y; z, 0]")
    assert [[str(e) for e in r] for r in rows] == [["x", "y"], ["z", "0"]]
    with pytest.raises(ParseError):
        parse_matrix(R7, "[x, y; z]")


@pytest.mark.parametrize("text,col", [("x + ", None), ("x $ y", 3), ("x + w", 5), ("(x + y", None)])
def test_parse_errors_carry_columns(text, col):
    with pytest.raises(ParseError) as info:
        parse_polynomial(R7, text, line=4)
    assert info.value.line == 4
    if col is not None:
        assert info.value.column == col


def test_homogeneity_and_weights():
    W = PolyRing(GF(5), ["x", "y"], [1, 2])
    x, y = W.gens()
    assert (x**2 + y).homogeneous_degree() == 2
    assert len(W.monomials(4)) == 3  # x^4, x^2 y, y^2
    with pytest.raises(NotHomogeneous):
        (x + y).homogeneous_degree()


@pytest.mark.parametrize("d", range(6))
def test_monomial_count_is_binomial(d):
    from math import comb
    assert len(R7.monomials(d)) == comb(d + 2, 2)
    mons = R7.monomials(d)
    assert list(mons) == sorted(mons, key=R7.key, reverse=True)


def test_grevlex_order():
    # in grevlex x > y > z and x*z < y^2
    key = R7.key
    assert key((1, 0, 0)) > key((0, 1, 0)) > key((0, 0, 1))
    assert key((0, 2, 0)) > key((1, 0, 1))


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        R7.var("x") + R9.var("x")


def test_substitute():
    x, y, z = R7.gens()
    p = x**2 * y + z
    assert p.substitute({"x": y + z}) == (y + z) ** 2 * y + z


def test_rationals_parse():
    Q = PolyRing(QQ, ["t"])
    t = Q.var("t")
    assert parse_polynomial(Q, "2t^2 - 7") == 2 * t**2 - 7
