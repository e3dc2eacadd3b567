# ============================================================================
# services/carlitz.py - The Carlitz module as twisted polynomials in tau
# ============================================================================

from typing import Dict, Iterable, Tuple

import config
from algebra.field import FieldCtx
from algebra.polynomial import Poly
from utils.errors import InternalInvariant, InvalidInput, SizeLimit
from utils.logger import setup_logger

logger = setup_logger(__name__)

# Dense polynomial in u with F_q[T] coefficients, lowest degree first
UPoly = Tuple[Poly, ...]

TAU = 'tau'


class TwistedOperator:
    """F_q-linear operator sum c_j tau^j, with tau(u) = u^q and tau*c = c^q*tau"""

    __slots__ = ('field', 'coeffs')

    def __init__(self, field: FieldCtx, coeffs: Iterable[Poly] = ()):
        self.field = field
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs: Tuple[Poly, ...] = tuple(coeffs)

    @classmethod
    def zero(cls, field: FieldCtx) -> 'TwistedOperator':
        return cls(field)

    @classmethod
    def one(cls, field: FieldCtx) -> 'TwistedOperator':
        return cls(field, (Poly.one(field),))

    @classmethod
    def constant(cls, c: Poly) -> 'TwistedOperator':
        return cls(c.field, (c,))

    @classmethod
    def tau(cls, field: FieldCtx) -> 'TwistedOperator':
        return cls(field, (Poly.zero(field), Poly.one(field)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, j: int) -> Poly:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Poly.zero(self.field)

    def __add__(self, other: 'TwistedOperator') -> 'TwistedOperator':
        n = max(len(self.coeffs), len(other.coeffs))
        return TwistedOperator(self.field, [self[j] + other[j] for j in range(n)])

    def __neg__(self) -> 'TwistedOperator':
        return TwistedOperator(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: 'TwistedOperator') -> 'TwistedOperator':
        return self + (-other)

    def __mul__(self, other: 'TwistedOperator') -> 'TwistedOperator':
        return twisted_mul(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwistedOperator) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_additive(self) -> 'AdditivePoly':
        return AdditivePoly(self.field, {j: c for j, c in enumerate(self.coeffs) if not c.is_zero()})

    def __str__(self) -> str:
        if not self.coeffs:
            return '0'
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            mon = '' if j == 0 else (TAU if j == 1 else f"{TAU}^{j}")
            cs = str(c)
            if not mon:
                terms.append(cs)
            elif cs == '1':
                terms.append(mon)
            else:
                terms.append(f"({cs})*{mon}" if '+' in cs else f"{cs}*{mon}")
        return '+'.join(terms)

    def __repr__(self) -> str:
        return f"TwistedOperator({self})"


class AdditivePoly:
    """sum_j c_j u^(q^j): the Carlitz polynomial viewed as a function of u"""

    __slots__ = ('field', 'terms')

    def __init__(self, field: FieldCtx, terms: Dict[int, Poly]):
        self.field = field
        self.terms = {j: c for j, c in sorted(terms.items()) if not c.is_zero()}

    @property
    def u_degree(self) -> int:
        if not self.terms:
            return -1
        return self.field.q ** max(self.terms)

    def exponents(self) -> Tuple[int, ...]:
        return tuple(self.field.q ** j for j in self.terms)

    def dense(self, max_degree: int = config.MAX_CARLITZ_DEGREE) -> UPoly:
        """Materialize as a dense polynomial in u"""
        degree = self.u_degree
        if degree > max_degree:
            raise SizeLimit(f"Carlitz polynomial of u-degree {degree} exceeds the limit of {max_degree}")
        out = [Poly.zero(self.field)] * (degree + 1)
        for j, c in self.terms.items():
            out[self.field.q ** j] = c
        return tuple(out)


def twisted_mul(a: TwistedOperator, b: TwistedOperator) -> TwistedOperator:
    """Composition a o b: (a_i tau^i)(b_j tau^j) = a_i b_j^(q^i) tau^(i+j)"""
    if a.field != b.field:
        raise InvalidInput(f"operators over different fields: {a.field} and {b.field}")
    if a.is_zero() or b.is_zero():
        return TwistedOperator.zero(a.field)
    out = [Poly.zero(a.field)] * (a.degree + b.degree + 1)
    for i, ai in enumerate(a.coeffs):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b.coeffs):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj.frobenius(i)
    return TwistedOperator(a.field, out)


def carlitz_operator(M: Poly) -> TwistedOperator:
    """rho_M = sum a_k (tau + T)^k, evaluated by Horner's rule"""
    field = M.field
    rho_T = TwistedOperator(field, (Poly.variable(field), Poly.one(field)))
    op = TwistedOperator.zero(field)
    for a_k in reversed(M.coeffs):
        op = twisted_mul(op, rho_T) + TwistedOperator.constant(Poly.constant(field, a_k))
    return op


def carlitz_polynomial(M: Poly, max_degree: int = config.MAX_CARLITZ_DEGREE) -> UPoly:
    """u_q^M as a dense polynomial in u"""
    return carlitz_operator(M).to_additive().dense(max_degree)


def _divmod_monic(num: UPoly, den: UPoly) -> Tuple[UPoly, UPoly]:
    """Long division in F_q[T][u] by a divisor that is monic in u"""
    field = den[-1].field
    if den[-1] != Poly.one(field):
        raise InternalInvariant("divisor is not monic in u")
    rem = list(num)
    d = len(den) - 1
    quot = [Poly.zero(field)] * max(len(rem) - d, 0)
    for shift in range(len(rem) - 1 - d, -1, -1):
        c = rem[shift + d]
        if c.is_zero():
            continue
        quot[shift] = c
        for i, b in enumerate(den):
            if not b.is_zero():
                rem[shift + i] = rem[shift + i] - c * b
    remainder = rem[:d]
    while remainder and remainder[-1].is_zero():
        remainder.pop()
    return tuple(quot), tuple(remainder)


def cyclotomic_polynomial(P: Poly, n: int, max_degree: int = config.MAX_CARLITZ_DEGREE) -> UPoly:
    """Psi_{P^n}(u) = u_q^{P^n} / u_q^{P^(n-1)}, of degree q^(n-1)(q-1)"""
    if n < 1:
        raise InvalidInput(f"cyclotomic level must be >= 1, got {n}")
    if P.degree != 1 or P.leading != 1:
        raise InvalidInput(f"cyclotomic polynomial needs a monic linear P, got '{P}'")

    num = carlitz_polynomial(P ** n, max_degree)
    den = carlitz_polynomial(P ** (n - 1), max_degree)
    quot, rem = _divmod_monic(num, den)
    if rem:
        raise InternalInvariant(f"u_q^{{P^{n - 1}}} does not divide u_q^{{P^{n}}} for P = {P}")

    q = P.field.q
    expected = q ** (n - 1) * (q - 1)
    if len(quot) - 1 != expected:
        raise InternalInvariant(f"cyclotomic polynomial has degree {len(quot) - 1}, expected {expected}")
    logger.debug(f"Psi for ({P})^{n} has degree {expected}")
    return quot


def format_upoly(f: UPoly, variable: str = 'u') -> str:
    terms = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c.is_zero():
            continue
        mon = '' if k == 0 else (variable if k == 1 else f"{variable}^{k}")
        cs = str(c)
        if not mon:
            terms.append(cs)
        elif cs == '1':
            terms.append(mon)
        else:
            terms.append(f"({cs})*{mon}" if '+' in cs else f"{cs}*{mon}")
    return '+'.join(terms) if terms else '0'
