# ============================================================================
# services/oracle.py - Brute-force model of K_{q,M} for verification
# ============================================================================
"""K_{q,M} is modelled as the tensor product over the primes P_i of the local
rings F_q(T)[x_i] / (Psi_{P_i^n_i}(x_i)). Scalars are fractions whose
denominators are powers of the P_i, stored as a numerator polynomial plus one
exponent per prime. Everything here is independent of the rewriting engine in
services.lambda_algebra and is only used to check it.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import config
from algebra.linalg import rank
from algebra.modulus import ModulusSpec, euler_phi
from algebra.polynomial import Poly
from services.carlitz import UPoly, carlitz_operator, cyclotomic_polynomial
from services.lambda_algebra import LambdaMonomial, LambdaSum
from utils.errors import InvalidInput, SizeLimit
from utils.logger import setup_logger

logger = setup_logger(__name__)

Index = Tuple[int, ...]


@dataclass(frozen=True)
class LocalElement:
    """sum_j num[j] x^j / P^den in one local ring"""
    num: Tuple[Poly, ...]
    den: int


class LocalRing:
    """F_q(T)[x] / (Psi(x)) for one prime power P^n"""

    def __init__(self, P: Poly, n: int, psi: UPoly):
        self.P = P
        self.n = n
        self.psi = psi
        self.dim = len(psi) - 1
        self.field = P.field
        self.root = self.field.neg(P[0])
        self._zero = Poly.zero(self.field)

    def element(self, coeffs: Sequence[Poly], den: int = 0) -> LocalElement:
        return self.normalize(LocalElement(self.reduce(coeffs), den))

    def zero(self) -> LocalElement:
        return LocalElement((self._zero,) * self.dim, 0)

    def one(self) -> LocalElement:
        return self.element([Poly.one(self.field)])

    def x(self) -> LocalElement:
        return self.element([self._zero, Poly.one(self.field)])

    def reduce(self, coeffs: Sequence[Poly]) -> Tuple[Poly, ...]:
        """Remainder modulo the monic Psi"""
        rem = list(coeffs)
        d = self.dim
        for shift in range(len(rem) - 1 - d, -1, -1):
            c = rem[shift + d]
            if c.is_zero():
                continue
            for i, b in enumerate(self.psi):
                if not b.is_zero():
                    rem[shift + i] = rem[shift + i] - c * b
        rem = rem[:d]
        return tuple(rem) + (self._zero,) * (d - len(rem))

    def normalize(self, a: LocalElement) -> LocalElement:
        num, den = a.num, a.den
        if all(c.is_zero() for c in num):
            return self.zero()
        while den > 0 and all(c(self.root) == 0 for c in num):
            num = tuple(c // self.P for c in num)
            den -= 1
        return LocalElement(num, den)

    def add(self, a: LocalElement, b: LocalElement) -> LocalElement:
        den = max(a.den, b.den)
        fa, fb = self.P ** (den - a.den), self.P ** (den - b.den)
        return self.normalize(LocalElement(tuple(x * fa + y * fb for x, y in zip(a.num, b.num)), den))

    def neg(self, a: LocalElement) -> LocalElement:
        return LocalElement(tuple(-c for c in a.num), a.den)

    def scale(self, a: LocalElement, c: Poly) -> LocalElement:
        return self.normalize(LocalElement(tuple(x * c for x in a.num), a.den))

    def mul(self, a: LocalElement, b: LocalElement) -> LocalElement:
        out = [self._zero] * (2 * self.dim - 1)
        for i, x in enumerate(a.num):
            if x.is_zero():
                continue
            for j, y in enumerate(b.num):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return self.normalize(LocalElement(self.reduce(out), a.den + b.den))

    def pow(self, a: LocalElement, e: int) -> LocalElement:
        if e < 0:
            raise InvalidInput("negative power of a local ring element")
        result, base = self.one(), a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def evaluate(self, f: UPoly, y: LocalElement) -> LocalElement:
        """f(y) for a polynomial in u with F_q[T] coefficients (Horner)"""
        acc = self.zero()
        for c in reversed(f):
            acc = self.add(self.mul(acc, y), self.element([c]))
        return acc


def carlitz_apply(A: Poly, y: LocalElement, local: LocalRing) -> LocalElement:
    """u_q^A evaluated at y: sum_j c_j y^(q^j)"""
    q = local.field.q
    acc = local.zero()
    power = y
    for j, c in enumerate(carlitz_operator(A).coeffs):
        if j:
            power = local.pow(power, q)
        if not c.is_zero():
            acc = local.add(acc, local.scale(power, c))
    return acc


@dataclass
class OracleElement:
    """sum_idx num[idx] x^idx / prod_i P_i^den[i], in reduced form"""
    num: Dict[Index, Poly]
    den: Tuple[int, ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, OracleElement) and self.num == other.num and self.den == other.den

    def is_zero(self) -> bool:
        return not self.num


class OracleRing:
    def __init__(self, spec: ModulusSpec, locals_: List[LocalRing]):
        self.spec = spec
        self.locals = locals_
        self.dim = 1
        for local in locals_:
            self.dim *= local.dim
        # lambda_{i,k} = u_q^{P_i^(n_i - k)}(x_i), stored at [i][k - 1]
        self.generators = tuple(local.x() for local in locals_)
        self._lambda_cache: Dict[tuple, Tuple[LocalElement, ...]] = {}
        self._power_cache: Dict[tuple, LocalElement] = {}

    def lambdas(self, i: int, y: Optional[LocalElement] = None) -> Tuple[LocalElement, ...]:
        local = self.locals[i]
        y = self.generators[i] if y is None else y
        key = (i, y)
        if key not in self._lambda_cache:
            self._lambda_cache[key] = tuple(carlitz_apply(local.P ** (local.n - k), y, local)
                                            for k in range(1, local.n + 1))
        return self._lambda_cache[key]

    def lambda_power(self, i: int, k: int, e: int, y: Optional[LocalElement] = None) -> LocalElement:
        """lambda_{i,k}^e; negative e only for k = 1, via lambda^-1 = -lambda^(q-2) / P"""
        key = (i, k, e, y)
        if key in self._power_cache:
            return self._power_cache[key]
        local = self.locals[i]
        lam = self.lambdas(i, y)[k - 1]
        if e >= 0:
            value = local.pow(lam, e)
        elif k == 1:
            inverse = local.neg(local.pow(lam, self.spec.q - 2))
            inverse = local.normalize(LocalElement(inverse.num, inverse.den + 1))
            value = local.pow(inverse, -e)
        else:
            raise InvalidInput(f"negative power of lambda_({i + 1},{k})")
        self._power_cache[key] = value
        return value

    def zero(self) -> OracleElement:
        return OracleElement({}, (0,) * len(self.locals))

    def normalize(self, a: OracleElement) -> OracleElement:
        num = {idx: c for idx, c in a.num.items() if not c.is_zero()}
        den = list(a.den)
        if not num:
            return self.zero()
        for i, local in enumerate(self.locals):
            while den[i] > 0 and all(c(local.root) == 0 for c in num.values()):
                num = {idx: c // local.P for idx, c in num.items()}
                den[i] -= 1
        return OracleElement(num, tuple(den))

    def lift(self, a: OracleElement, den: Sequence[int]) -> Dict[Index, Poly]:
        factor = Poly.one(self.spec.field)
        for local, target, have in zip(self.locals, den, a.den):
            factor = factor * local.P ** (target - have)
        return {idx: c * factor for idx, c in a.num.items()}

    def add(self, a: OracleElement, b: OracleElement) -> OracleElement:
        den = tuple(max(x, y) for x, y in zip(a.den, b.den))
        num = self.lift(a, den)
        for idx, c in self.lift(b, den).items():
            num[idx] = num[idx] + c if idx in num else c
        return self.normalize(OracleElement(num, den))

    def tensor(self, coeff: Poly, factors: Sequence[LocalElement]) -> OracleElement:
        """coeff * (f_1 (x) f_2 (x) ... (x) f_r)"""
        support = [[(j, c) for j, c in enumerate(f.num) if not c.is_zero()] for f in factors]
        num: Dict[Index, Poly] = {}
        for combo in product(*support):
            c = coeff
            for _, part in combo:
                c = c * part
            num[tuple(j for j, _ in combo)] = c
        return self.normalize(OracleElement(num, tuple(f.den for f in factors)))


def oracle_build(spec: ModulusSpec, max_dim: int = config.MAX_ORACLE_DIM) -> OracleRing:
    dim = euler_phi(spec)
    if dim > max_dim:
        raise SizeLimit(f"oracle ring of dimension {dim} for {spec} exceeds the limit of {max_dim}")
    locals_ = [LocalRing(spec.prime(i), n, cyclotomic_polynomial(spec.prime(i), n))
               for i, n in enumerate(spec.multiplicities)]
    logger.info(f"Oracle ring for {spec}: dimension {dim}")
    return OracleRing(spec, locals_)


def _embed_monomial(m: LambdaMonomial, ring: OracleRing,
                    images: Optional[Sequence[LocalElement]]) -> OracleElement:
    spec = ring.spec
    coeff = Poly.constant(spec.field, m.scalar)
    for i, power in enumerate(m.prime_powers):
        if power < 0:
            raise InvalidInput(f"negative prime power in {m}")
        coeff = coeff * spec.prime(i) ** power

    factors = []
    for i, row in enumerate(m.exponents):
        local = ring.locals[i]
        y = None if images is None else images[i]
        factor = local.one()
        for k, e in enumerate(row, start=1):
            if e:
                factor = local.mul(factor, ring.lambda_power(i, k, e, y))
        factors.append(factor)
    return ring.tensor(coeff, factors)


def oracle_embed(s: LambdaSum, ring: OracleRing,
                 images: Optional[Sequence[LocalElement]] = None) -> OracleElement:
    """Value of the coefficient function of s; with images, of sigma(s) for x_i -> images[i]"""
    if len(s.dT_flags()) > 1:
        raise InvalidInput("cannot embed a sum mixing differentials and functions")
    out = ring.zero()
    for m in s.monomials():
        out = ring.add(out, _embed_monomial(m, ring, images))
    return out


def sigma_images(A: Poly, ring: OracleRing) -> Tuple[LocalElement, ...]:
    """x_i -> u_q^{A mod P_i^n_i}(x_i)"""
    spec = ring.spec
    return tuple(carlitz_apply(A % spec.prime_power(i), ring.generators[i], local)
                 for i, local in enumerate(ring.locals))


def _power_table(local: LocalRing, y: LocalElement, count: int) -> List[LocalElement]:
    powers = [local.one()]
    for _ in range(count - 1):
        powers.append(local.mul(powers[-1], y))
    return powers


def oracle_substitute(a: OracleElement, ring: OracleRing,
                      images: Sequence[LocalElement],
                      max_dim: int = config.VERIFY_MAX_ORACLE_DIM) -> OracleElement:
    """Apply the field automorphism fixing F_q(T) with x_i -> images[i]"""
    if ring.dim > max_dim:
        raise SizeLimit(f"substitution on a ring of dimension {ring.dim} exceeds the limit of {max_dim}")
    tables = [_power_table(local, y, local.dim) for local, y in zip(ring.locals, images)]
    out = ring.zero()
    for idx, c in a.num.items():
        term = ring.tensor(c, [tables[i][j] for i, j in enumerate(idx)])
        term = OracleElement(term.num, tuple(x + y for x, y in zip(term.den, a.den)))
        out = ring.add(out, term)
    return out


def oracle_mul(a: OracleElement, b: OracleElement, ring: OracleRing,
               max_dim: int = config.VERIFY_MAX_ORACLE_DIM) -> OracleElement:
    if ring.dim > max_dim:
        raise SizeLimit(f"product on a ring of dimension {ring.dim} exceeds the limit of {max_dim}")
    tables = [_power_table(local, local.x(), 2 * local.dim - 1) for local in ring.locals]
    out = ring.zero()
    for ia, ca in a.num.items():
        for ib, cb in b.num.items():
            term = ring.tensor(ca * cb, [tables[i][x + y] for i, (x, y) in enumerate(zip(ia, ib))])
            term = OracleElement(term.num, tuple(x + y + z for x, y, z in zip(term.den, a.den, b.den)))
            out = ring.add(out, term)
    return out


def oracle_independent(sums: Sequence[LambdaSum], ring: OracleRing,
                       max_entries: int = config.MAX_RANK_ENTRIES) -> bool:
    """F_q-linear independence, by clearing denominators and flattening T-coefficients"""
    elements = [oracle_embed(s, ring) for s in sums]
    if not elements:
        return True
    den = tuple(max(e.den[i] for e in elements) for i in range(len(ring.locals)))
    lifted = [ring.lift(e, den) for e in elements]

    columns: Dict[Tuple[Index, int], int] = {}
    for num in lifted:
        for idx, c in num.items():
            for t, coeff in enumerate(c.coeffs):
                if coeff:
                    columns.setdefault((idx, t), len(columns))
    if len(columns) * len(lifted) > max_entries:
        raise SizeLimit(f"rank check of {len(lifted)} x {len(columns)} exceeds the limit of {max_entries}")

    rows = []
    for num in lifted:
        row = [0] * len(columns)
        for idx, c in num.items():
            for t, coeff in enumerate(c.coeffs):
                if coeff:
                    row[columns[(idx, t)]] = coeff
        rows.append(row)
    r = rank(ring.spec.field, rows)
    logger.info(f"Oracle rank {r} for {len(rows)} elements of {ring.spec}")
    return r == len(rows)
