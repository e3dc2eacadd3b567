import pytest

from services.differentials import genus
from services.gaps import (
    OrderSequence,
    gap_sequence,
    gaps_row,
    order_sequence,
    valuation_multiset,
)
from utils.errors import InternalInvariant, InvalidInput


@pytest.mark.parametrize('q, literal, orders', [
    (3, '0^2', (0,)),
    (4, '0^2', (0, 1, 4)),
    (3, '0^3', (0, 1, 2, 3, 4, 6, 9, 10, 12, 18)),
])
def test_order_sequences(make_spec, q, literal, orders):
    seq = order_sequence(make_spec(q, literal))
    assert seq.orders == orders
    assert len(seq) == genus(make_spec(q, literal))


def test_gaps_are_orders_plus_one(make_spec):
    assert gap_sequence(make_spec(4, '0^2')) == (1, 2, 5)
    assert gap_sequence(make_spec(3, '0^2')) == (1,)


def test_other_roots_give_the_same_orders(make_spec):
    assert order_sequence(make_spec(3, '2^3')) == order_sequence(make_spec(3, '0^3'))


def test_orders_need_a_single_prime_power(make_spec):
    with pytest.raises(InvalidInput):
        order_sequence(make_spec(3, '0^2,1'))
    with pytest.raises(InvalidInput):
        order_sequence(make_spec(3, '0'))
    with pytest.raises(InvalidInput):
        order_sequence(make_spec(2, '0^2'))


def test_order_sequence_must_increase():
    with pytest.raises(InternalInvariant):
        OrderSequence((0, 2, 2))


def test_valuation_multisets(make_spec):
    multiset = valuation_multiset(make_spec(3, '0^2,1'), 0)
    assert multiset.values == (0, 0, 1, 3)
    assert multiset.caveat

    multiset = valuation_multiset(make_spec(5, '0,1'), 1)
    assert multiset.values == (0, 0, 1)

    assert not valuation_multiset(make_spec(3, '0^3')).caveat


def test_gaps_row(make_spec):
    assert gaps_row(make_spec(4, '0^2')) == {
        "modulus": "0^2", "anchor": 0, "genus": 3,
        "orders": "0;1;4", "gaps": "1;2;5", "caveat": "false",
    }


def test_caveated_row_leaves_gaps_blank(make_spec):
    row = gaps_row(make_spec(3, '0^2,1'))
    assert row["orders"] == "0;0;1;3"
    assert row["gaps"] == ""
    assert row["caveat"] == "true"


def test_genus_zero_row(make_spec):
    row = gaps_row(make_spec(3, '0'))
    assert row["genus"] == 0
    assert row["orders"] == row["gaps"] == ""
