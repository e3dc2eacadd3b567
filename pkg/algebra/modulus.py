# ============================================================================
# algebra/modulus.py - Split moduli, P-adic digits and the unit group of F_q[T]/(M)
# ============================================================================

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import List, Sequence, Tuple

import config
from algebra.field import FieldCtx
from algebra.literals import is_coefficient_literal, parse_factored, parse_poly
from algebra.polynomial import Poly
from utils.errors import InvalidInput, NonSplitModulus, NotAUnit, SizeLimit
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class ModulusSpec:
    """A monic split modulus M = prod (T - a_i)^(n_i) over F_q.

    Factors are kept in ascending order of the root's element code, so
    prime index 0 is always the smallest root.
    """
    field: FieldCtx
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        factors = tuple(sorted((int(a), int(n)) for a, n in self.factors))
        if not factors:
            raise InvalidInput("modulus must have degree >= 1")
        roots = [a for a, _ in factors]
        if len(set(roots)) != len(roots):
            raise InvalidInput(f"repeated root in factorization {factors}")
        for a, n in factors:
            if not 0 <= a < self.field.q:
                raise InvalidInput(f"root code {a} outside {self.field!r}")
            if n < 1:
                raise InvalidInput(f"multiplicity {n} must be positive")
        object.__setattr__(self, 'factors', factors)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def num_primes(self) -> int:
        return len(self.factors)

    @property
    def roots(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.factors)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(n for _, n in self.factors)

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def prime(self, i: int) -> Poly:
        """P_i = T - a_i"""
        return Poly.linear(self.field, self.factors[i][0])

    def prime_power(self, i: int) -> Poly:
        return self.prime(i) ** self.factors[i][1]

    @cached_property
    def modulus(self) -> Poly:
        result = Poly.one(self.field)
        for i in range(self.num_primes):
            result = result * self.prime_power(i)
        return result

    def is_squarefree(self) -> bool:
        return all(n == 1 for n in self.multiplicities)

    def label(self) -> str:
        """Canonical factored literal, e.g. '0^2,1^1'"""
        return ','.join(f"{self.field.format(a)}^{n}" for a, n in self.factors)

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class DigitVector:
    """Digits alpha_0..alpha_{L-1} of A = sum alpha_l (T - root)^l mod (T - root)^L"""
    field: FieldCtx
    root: int
    digits: Tuple[int, ...]

    def reassemble(self) -> Poly:
        P = Poly.linear(self.field, self.root)
        result, power = Poly.zero(self.field), Poly.one(self.field)
        for alpha in self.digits:
            result = result + power.scale(alpha)
            power = power * P
        return result


def split_factor(M: Poly, field: FieldCtx) -> ModulusSpec:
    """Factor M into linear factors by exhaustive root deflation"""
    if M.is_zero() or M.degree < 1:
        raise InvalidInput(f"modulus must have degree >= 1, got '{M}'")
    core = M.monic()
    factors = []
    for a in field.elements():
        P = Poly.linear(field, a)
        n = 0
        while core.degree >= 1 and core(a) == 0:
            core = core // P
            n += 1
        if n:
            factors.append((a, n))
    if core.degree >= 1:
        raise NonSplitModulus(f"modulus '{M}' has the non-split factor '{core}' over {field!r}")
    return ModulusSpec(field, tuple(factors))


def parse_modulus(text: str, field: FieldCtx) -> ModulusSpec:
    """Parse either 'root^mult,...' or a coefficient literal in T"""
    if is_coefficient_literal(text):
        return split_factor(parse_poly(text, field), field)
    return ModulusSpec(field, tuple(parse_factored(text, field)))


def padic_digits(A: Poly, P: Poly, L: int) -> DigitVector:
    """P-adic digits of A for monic linear P, by evaluation and deflation"""
    if P.degree != 1 or P.leading != 1:
        raise InvalidInput(f"P-adic expansion needs a monic linear P, got '{P}'")
    if L < 1:
        raise InvalidInput("number of digits must be >= 1")
    root = A.field.neg(P[0])
    digits = []
    rest = A
    for _ in range(L):
        alpha = rest(root)
        digits.append(alpha)
        rest = (rest - Poly.constant(A.field, alpha)) // P
    return DigitVector(A.field, root, tuple(digits))


def euler_phi(m: ModulusSpec) -> int:
    """|(F_q[T]/(M))*| = prod q^(n_i - 1)(q - 1)"""
    result = 1
    for n in m.multiplicities:
        result *= m.q ** (n - 1) * (m.q - 1)
    return result


def is_unit(A: Poly, m: ModulusSpec) -> bool:
    return all(A(a) != 0 for a in m.roots)


def units_enumerate(m: ModulusSpec, max_units: int = config.MAX_UNITS) -> List[Poly]:
    """All units of F_q[T]/(M) of degree < deg M, in graded lexicographic order"""
    count = euler_phi(m)
    if count > max_units:
        raise SizeLimit(f"{count} units for modulus {m} exceed the limit of {max_units}")
    units = []
    for d in range(m.degree):
        for coeffs in product(range(m.q), repeat=d + 1):
            if coeffs[-1] == 0:
                continue
            A = Poly(m.field, coeffs)
            if is_unit(A, m):
                units.append(A)
    return sorted(units, key=Poly.sort_key)


def reduce_unit(A: Poly, m: ModulusSpec) -> Poly:
    """Reduce A mod M, raising NotAUnit when gcd(A, M) != 1"""
    A = A % m.modulus
    if not is_unit(A, m):
        raise NotAUnit(f"'{A}' is not a unit modulo {m.modulus}")
    return A


def unit_mul(A: Poly, B: Poly, m: ModulusSpec) -> Poly:
    return (A * B) % m.modulus


def unit_order(A: Poly, m: ModulusSpec) -> int:
    """Multiplicative order of a unit"""
    A = reduce_unit(A, m)
    one = Poly.one(m.field)
    x, k = A, 1
    while x != one:
        x = unit_mul(x, A, m)
        k += 1
    return k


def unit_inverse(A: Poly, m: ModulusSpec) -> Poly:
    A = reduce_unit(A, m)
    one = Poly.one(m.field)
    x = A
    while unit_mul(x, A, m) != one:
        x = unit_mul(x, A, m)
    return x


def moduli_up_to(field: FieldCtx, max_deg: int, min_deg: int = 1) -> List[ModulusSpec]:
    """Every split modulus with min_deg <= deg M <= max_deg, in a fixed order"""
    found = []

    def extend(start: int, remaining: int, factors: Sequence[Tuple[int, int]]):
        if factors and min_deg <= max_deg - remaining:
            found.append(ModulusSpec(field, tuple(factors)))
        for a in range(start, field.q):
            for n in range(1, remaining + 1):
                extend(a + 1, remaining - n, list(factors) + [(a, n)])

    extend(0, max_deg, [])
    return sorted(found, key=lambda s: (s.degree, s.factors))
