import pytest
from hypothesis import given, strategies as st

from algebra.field import field_for_order, field_make, prime_power
from algebra.linalg import FqMatrix, rank
from utils.errors import NotIrreducible, NotPrime

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16]


def test_prime_field():
    F = field_make(3, 1)
    assert F.q == 3
    assert F.mul(2, 2) == 1
    assert F.neg(1) == 2


def test_default_defining_polynomials():
    assert field_make(2, 2).defining_poly == (1, 1, 1)
    assert field_make(2, 3).defining_poly == (1, 1, 0, 1)
    assert field_make(3, 2).defining_poly == (2, 2, 1)
    assert field_make(2, 4).defining_poly == (1, 1, 0, 0, 1)


def test_composite_rejected():
    with pytest.raises(NotPrime):
        field_make(4, 1)
    with pytest.raises(NotPrime):
        field_for_order(6)
    with pytest.raises(NotPrime):
        prime_power(1)


def test_reducible_defining_polynomial_rejected():
    # g^2 + 1 = (g + 1)^2 over F_2
    with pytest.raises(NotIrreducible):
        field_make(2, 2, (1, 0, 1))


def test_prime_power_split():
    assert prime_power(9) == (3, 2)
    assert prime_power(16) == (2, 4)
    assert prime_power(7) == (7, 1)


def test_extension_arithmetic():
    F4 = field_for_order(4)
    g = F4.generator
    # g^2 = g + 1
    assert F4.mul(g, g) == F4.add(g, 1)
    assert F4.format(F4.add(g, 1)) == 'g+1'
    assert F4.pow(g, 3) == 1

    F9 = field_for_order(9)
    h = F9.generator
    # g^2 = -2g - 2 = g + 1 over F_3
    assert F9.mul(h, h) == F9.from_coords([1, 1])
    assert F9.format(F9.from_coords([1, 2])) == '2*g+1'


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field_for_order(5).inv(0)


@given(st.sampled_from(ORDERS), st.data())
def test_field_axioms(q, data):
    F = field_for_order(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, q - 1) == 1
        assert F.pow(a, -1) == F.inv(a)


@given(st.sampled_from(ORDERS))
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(q):
    F = field_for_order(q)
    orders = []
    for a in range(1, q):
        k, x = 1, a
        while x != 1:
            x = F.mul(x, a)
            k += 1
        orders.append(k)
    assert max(orders) == q - 1


def test_rank_over_f3():
    F = field_for_order(3)
    assert rank(F, [[1, 0, 2], [2, 0, 1], [0, 1, 1]]) == 2
    assert rank(F, [[0, 0], [0, 0]]) == 0
    assert rank(F, []) == 0


def test_matrix_operations():
    F = field_for_order(5)
    A = FqMatrix(F, [[1, 2], [0, 1]])
    I = FqMatrix.identity(F, 2)
    assert (A ** 5).is_identity()
    assert ((A - I) ** 2).is_zero()
    assert A @ I == A
    assert A.trace() == 2
    assert A.is_invertible()
    assert not A.is_diagonal()
    assert FqMatrix(F, [[1, 2], [2, 4]]).rank() == 1


def test_conway_polynomials_from_the_database():
    assert field_for_order(25).defining_poly == (2, 4, 1)
    assert field_for_order(27).defining_poly == (1, 2, 0, 1)
    assert field_for_order(9).defining_poly == (2, 2, 1)


def test_extension_field_matrices():
    F4 = field_for_order(4)
    g, g2 = F4.generator, F4.mul(F4.generator, F4.generator)
    A = FqMatrix(F4, [[g, 1], [0, g]])
    # char 2: the off-diagonal term g + g vanishes
    assert (A @ A).to_lists() == [[g2, 0], [0, g2]]
    assert (A - A).is_zero()
    assert A.trace() == 0
    assert rank(F4, [[1, g], [g, g2]]) == 1
    assert FqMatrix(F4, [[1, g], [g, 1]]).is_invertible()


def _naive_product(F, a, b):
    out = []
    for row in a:
        out_row = []
        for col in zip(*b):
            acc = 0
            for x, y in zip(row, col):
                acc = F.add(acc, F.mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


@given(st.sampled_from([3, 4, 8, 9]), st.data())
def test_matrix_product_matches_field_arithmetic(q, data):
    F = field_for_order(q)
    n = data.draw(st.integers(1, 4))
    square = st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=n, max_size=n)
    a, b = data.draw(square), data.draw(square)
    assert (FqMatrix(F, a) @ FqMatrix(F, b)).to_lists() == _naive_product(F, a, b)
    assert rank(F, a) == rank(F, [list(col) for col in zip(*a)]) <= n
