import pytest
from hypothesis import HealthCheck, settings

from algebra.field import field_for_order
from algebra.modulus import parse_modulus
from algebra.polynomial import Poly

settings.register_profile("fast", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fast")

_FIELDS = {}


def gf(q: int):
    if q not in _FIELDS:
        _FIELDS[q] = field_for_order(q)
    return _FIELDS[q]


@pytest.fixture
def field():
    return gf


@pytest.fixture
def make_spec():
    def build(q: int, literal: str):
        return parse_modulus(literal, gf(q))
    return build


@pytest.fixture
def poly():
    def build(q: int, *coeffs: int):
        return Poly(gf(q), coeffs)
    return build
