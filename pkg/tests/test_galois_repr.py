import pytest

from algebra.linalg import FqMatrix
from algebra.modulus import unit_order, units_enumerate
from services.galois_repr import (
    rep_matrix,
    rep_record,
    representation_table,
    sigma_apply,
)
from services.differentials import enumerate_basis
from services.lambda_algebra import LambdaMonomial, LambdaSum, WindowPolicy, canonicalize
from utils.errors import InvalidInput, NotAUnit, SizeLimit


def test_sigma_on_a_level_two_generator(make_spec, poly):
    spec = make_spec(3, '0^2')
    F = spec.field
    l11 = LambdaMonomial.generator(spec, 0, 1)
    l12 = LambdaMonomial.generator(spec, 0, 2)
    image = sigma_apply(poly(3, 1, 1), LambdaSum.of(F, l12), spec)
    assert image == canonicalize(LambdaSum.of(F, l12, l11), WindowPolicy.default(spec, 0), spec)


def test_sigma_scales_level_one(make_spec, poly):
    spec = make_spec(5, '0')
    F = spec.field
    s = LambdaSum.of(F, LambdaMonomial.generator(spec, 0, 1, -2).with_dT())
    # 2^-2 = 4 in F_5
    expected = LambdaSum.of(F, LambdaMonomial.generator(spec, 0, 1, -2).with_dT().scaled(4, F))
    assert sigma_apply(poly(5, 2), s, spec) == expected


def test_sigma_of_identity(make_spec, poly):
    spec = make_spec(3, '0^2,1')
    F = spec.field
    for t in enumerate_basis(spec):
        s = LambdaSum.of(F, t.to_monomial(spec))
        assert sigma_apply(poly(3, 1), s, spec) == s


def test_sigma_needs_a_unit(make_spec, poly):
    spec = make_spec(3, '0^2')
    s = LambdaSum.of(spec.field, LambdaMonomial.generator(spec, 0, 2))
    with pytest.raises(NotAUnit):
        sigma_apply(poly(3, 0, 1), s, spec)


@pytest.mark.parametrize('a, b', [(1, 0), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2)])
def test_t_squared_is_one_dimensional(make_spec, poly, a, b):
    spec = make_spec(3, '0^2')
    assert rep_matrix(poly(3, a, b), spec).to_lists() == [[a]]


def test_two_prime_matrix_is_diagonal(make_spec, poly):
    spec = make_spec(5, '0,1')
    matrix = rep_matrix(poly(5, 2), spec)
    assert matrix.to_lists() == [[3, 0, 0], [0, 3, 0], [0, 0, 4]]


def test_kernel_of_t_squared(make_spec, poly):
    table = representation_table(make_spec(3, '0^2'))
    assert len(table) == 6
    assert set(table.kernel()) == {poly(3, 1), poly(3, 1, 1), poly(3, 1, 2)}


@pytest.mark.parametrize('q, literal', [(3, '0^3'), (3, '0^2,1'), (4, '0^2'), (5, '0,1'), (3, '0,1,2')])
def test_representation_properties(make_spec, q, literal):
    spec = make_spec(q, literal)
    table = representation_table(spec)
    g = len(table.basis)
    identity = FqMatrix.identity(spec.field, g)
    for A in table.units:
        rho = table[A]
        assert rho.is_invertible()
        if spec.is_squarefree():
            assert rho.is_diagonal()
        order = unit_order(A, spec)
        assert rho ** order == identity
        if order == spec.field.p ** _log(order, spec.field.p):
            assert ((rho - identity) ** g).is_zero()


def _log(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def test_trace_does_not_depend_on_the_anchor(make_spec):
    spec = make_spec(3, '0^2,1')
    tables = [representation_table(spec, anchor) for anchor in range(spec.num_primes)]
    for A in units_enumerate(spec):
        assert tables[0][A].trace() == tables[1][A].trace()


def test_table_reduces_its_argument(make_spec, poly):
    spec = make_spec(3, '0^2')
    table = representation_table(spec)
    # T^2 + T + 1 = 1 + T mod T^2
    assert table[poly(3, 1, 1, 1)] == table[poly(3, 1, 1)]


def test_rep_record(make_spec, poly):
    spec = make_spec(3, '0^2')
    basis = enumerate_basis(spec)
    record = rep_record(poly(3, 2), rep_matrix(poly(3, 2), spec), basis)
    assert record == {"unit": "2", "matrix": [[2]], "basis_ref": [[0, [[1, 1, 3], [1, 2, 0]]]]}


def test_genus_zero_has_nothing_to_represent(make_spec, poly):
    with pytest.raises(InvalidInput):
        rep_matrix(poly(3, 1), make_spec(3, '0'))
    with pytest.raises(InvalidInput):
        representation_table(make_spec(3, '0,1'))


def test_unit_limit(make_spec):
    with pytest.raises(SizeLimit):
        representation_table(make_spec(3, '0^3'), max_units=10)
