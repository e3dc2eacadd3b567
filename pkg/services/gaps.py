# ============================================================================
# services/gaps.py - Order and gap sequences at the ramified primes
# ============================================================================

from dataclasses import dataclass
from typing import List, Tuple

import config
from algebra.modulus import ModulusSpec
from services.differentials import enumerate_basis, genus, mono_valuations
from utils.errors import InternalInvariant, InvalidInput
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class OrderSequence:
    orders: Tuple[int, ...]

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.orders, self.orders[1:])):
            raise InternalInvariant(f"order sequence {self.orders} is not strictly increasing")

    def gaps(self) -> Tuple[int, ...]:
        return tuple(o + 1 for o in self.orders)

    def __len__(self) -> int:
        return len(self.orders)


@dataclass(frozen=True)
class ValuationMultiset:
    values: Tuple[int, ...]
    caveat: bool


def _anchor_valuations(spec: ModulusSpec, anchor: int, max_genus: int) -> List[int]:
    basis = enumerate_basis(spec, anchor, max_genus)
    return [mono_valuations(t.to_monomial(spec, anchor), spec).finite[anchor] for t in basis]


def order_sequence(spec: ModulusSpec, max_genus: int = config.MAX_GENUS) -> OrderSequence:
    """Orders of the basis differentials at the totally ramified prime of M = P^n"""
    if spec.num_primes != 1 or spec.multiplicities[0] < 2:
        raise InvalidInput(f"order sequences need M = P^n with n >= 2, got {spec}")
    if genus(spec) < 1:
        raise InvalidInput(f"modulus {spec} has genus 0")
    values = _anchor_valuations(spec, 0, max_genus)
    if len(set(values)) != len(values):
        raise InternalInvariant(f"orders of {spec} collide: {sorted(values)}")
    return OrderSequence(tuple(sorted(values)))


def gap_sequence(spec: ModulusSpec, max_genus: int = config.MAX_GENUS) -> Tuple[int, ...]:
    return order_sequence(spec, max_genus).gaps()


def valuation_multiset(spec: ModulusSpec, anchor: int = 0,
                       max_genus: int = config.MAX_GENUS) -> ValuationMultiset:
    """Valuations at P_anchor of the anchored basis; not claimed to be orders when r > 1"""
    caveat = spec.num_primes > 1
    values = tuple(sorted(_anchor_valuations(spec, anchor, max_genus)))
    if caveat:
        logger.warning(f"Valuation multiset of {spec} at prime {anchor + 1} is not an order sequence")
    return ValuationMultiset(values, caveat)


def gaps_row(spec: ModulusSpec, anchor: int = 0, max_genus: int = config.MAX_GENUS) -> dict:
    """One CSV row: modulus, anchor, genus, orders, gaps, caveat"""
    g = genus(spec)
    if g == 0:
        orders, gaps, caveat = (), (), spec.num_primes > 1
    elif spec.num_primes == 1:
        seq = order_sequence(spec, max_genus)
        orders, gaps, caveat = seq.orders, seq.gaps(), False
    else:
        multiset = valuation_multiset(spec, anchor, max_genus)
        orders, gaps, caveat = multiset.values, (), True
    return {
        "modulus": spec.label(),
        "anchor": anchor,
        "genus": g,
        "orders": ';'.join(str(o) for o in orders),
        "gaps": ';'.join(str(o) for o in gaps),
        "caveat": str(caveat).lower(),
    }
