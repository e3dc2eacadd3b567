import pytest
from hypothesis import given, strategies as st

from algebra.field import field_for_order
from algebra.literals import parse_element, parse_factored, parse_poly
from algebra.polynomial import Poly
from utils.errors import LiteralError

F3 = field_for_order(3)
F4 = field_for_order(4)


def polys(q, max_degree=4):
    F = field_for_order(q)
    return st.lists(st.integers(0, q - 1), max_size=max_degree + 1).map(lambda c: Poly(F, c))


def test_trimming_and_degree():
    assert Poly(F3, [1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly(F3, [0, 0]).is_zero()
    assert Poly.zero(F3).degree == -1
    assert Poly.linear(F3, 1) == Poly(F3, [2, 1])


def test_display():
    assert str(Poly(F3, [1, 2, 1])) == 'T^2+2*T+1'
    assert str(Poly(F3, [1, 1])) == 'T+1'
    assert str(Poly.zero(F3)) == '0'
    assert str(Poly(F4, [F4.generator, 3])) == '(g+1)*T+g'


def test_frobenius_spreads_exponents():
    T = Poly.variable(F3)
    assert T.frobenius(1) == T ** 3
    assert (T + Poly.one(F3)).frobenius(2) == T ** 9 + Poly.one(F3)


def test_evaluation_and_gcd():
    f = Poly(F3, [0, 2, 1])                       # T^2 + 2T = T(T - 1)
    assert f(0) == 0 and f(1) == 0 and f(2) != 0
    g = Poly(F3, [2, 0, 1])                       # T^2 - 1 = (T - 1)(T + 1)
    assert f.gcd(g) == Poly.linear(F3, 1)


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_division_identity(q, data):
    a = data.draw(polys(q, 6))
    b = data.draw(polys(q, 3).filter(lambda p: not p.is_zero()))
    quot, rem = divmod(a, b)
    assert quot * b + rem == a
    assert rem.degree < b.degree


@given(st.sampled_from([3, 4, 9]), st.data())
def test_frobenius_is_a_ring_map(q, data):
    a, b = data.draw(polys(q, 3)), data.draw(polys(q, 3))
    assert (a * b).frobenius(1) == a.frobenius(1) * b.frobenius(1)
    assert (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)
    assert a.frobenius(1) == a ** q


def test_parse_poly():
    assert parse_poly('T^2+2*T+1', F3) == Poly(F3, [1, 2, 1])
    assert parse_poly('(T+1)^2', F3) == Poly(F3, [1, 2, 1])
    assert parse_poly('4*T', F3) == Poly(F3, [0, 1])
    assert parse_poly('(g+1)*T+g', F4) == Poly(F4, [2, 3])


def test_parse_element():
    assert parse_element('4', F3) == 1
    assert parse_element('g+1', F4) == 3
    assert parse_element('g^2', F4) == 3


def test_bad_literals():
    with pytest.raises(LiteralError):
        parse_poly('T+*', F3)
    with pytest.raises(LiteralError):
        parse_poly('1/2*T', F3)
    with pytest.raises(LiteralError):
        parse_element('T', F3)
    with pytest.raises(LiteralError):
        parse_element('g', F3)


def test_parse_factored():
    assert parse_factored('0^2,1^1', F3) == [(0, 2), (1, 1)]
    assert parse_factored('2', F3) == [(2, 1)]
    with pytest.raises(LiteralError):
        parse_factored('0^x', F3)


def test_parse_factored_roots_with_powers():
    # g^2 = g+1 in GF(4) under the Conway polynomial x^2+x+1
    assert parse_factored('g^2', F4) == [(2, 2)]
    assert parse_factored('g^2^1', F4) == [(3, 1)]
    assert parse_factored('(g^2)^1', F4) == [(3, 1)]
    assert parse_factored('(g^2)', F4) == [(3, 1)]
    assert parse_factored('(g+1)^3,0', F4) == [(3, 3), (0, 1)]


def test_sort_key_is_graded_lexicographic():
    a, b, c = Poly(F3, (2,)), Poly(F3, (0, 1)), Poly(F3, (1, 1))
    assert sorted([c, b, a], key=Poly.sort_key) == [a, b, c]
