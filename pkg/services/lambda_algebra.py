# ============================================================================
# services/lambda_algebra.py - Monomials in the tower generators and their rewriting
# ============================================================================
"""Symbolic products c * prod P_i^m_i * prod lambda_{i,k}^e_{i,k} * dT.

Prime indices i are 0-based and follow the order of ModulusSpec.factors.
Levels k run from 1 to n_i; exponents[i][k - 1] holds e_{i,k}. The
generators satisfy

    lambda_{i,1}^(q-1) = -P_i
    lambda_{i,k}^q     = lambda_{i,k-1} + lambda_{i,1}^(q-1) * lambda_{i,k}   (k >= 2)

and canonicalize() uses them to bring every term into the exponent windows
of a WindowPolicy, with all prime powers moved onto the anchor prime.
"""

from dataclasses import dataclass, replace
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

from algebra.field import FieldCtx
from algebra.modulus import ModulusSpec
from utils.errors import DTSquared, InvalidInput, NegativePower, NotReducible
from utils.logger import setup_logger

logger = setup_logger(__name__)

Key = Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...], bool]


@dataclass(frozen=True)
class LambdaMonomial:
    scalar: int
    prime_powers: Tuple[int, ...]
    exponents: Tuple[Tuple[int, ...], ...]
    has_dT: bool = False

    @classmethod
    def unit(cls, spec: ModulusSpec, has_dT: bool = False, scalar: int = 1) -> 'LambdaMonomial':
        return cls(scalar, (0,) * spec.num_primes,
                   tuple((0,) * n for n in spec.multiplicities), has_dT)

    @classmethod
    def generator(cls, spec: ModulusSpec, i: int, k: int, e: int = 1) -> 'LambdaMonomial':
        """lambda_{i,k}^e"""
        if not 1 <= k <= spec.multiplicities[i]:
            raise InvalidInput(f"level {k} outside the tower of prime {i}")
        return LambdaMonomial.unit(spec).with_exponent(i, k, e)

    @classmethod
    def from_key(cls, key: Key, scalar: int) -> 'LambdaMonomial':
        prime_powers, exponents, has_dT = key
        return cls(scalar, prime_powers, exponents, has_dT)

    @property
    def key(self) -> Key:
        return (self.prime_powers, self.exponents, self.has_dT)

    def exponent(self, i: int, k: int) -> int:
        return self.exponents[i][k - 1]

    def with_exponent(self, i: int, k: int, e: int) -> 'LambdaMonomial':
        row = list(self.exponents[i])
        row[k - 1] = e
        exponents = self.exponents[:i] + (tuple(row),) + self.exponents[i + 1:]
        return replace(self, exponents=exponents)

    def with_prime_power(self, i: int, m: int) -> 'LambdaMonomial':
        powers = list(self.prime_powers)
        powers[i] = m
        return replace(self, prime_powers=tuple(powers))

    def with_dT(self, has_dT: bool = True) -> 'LambdaMonomial':
        return replace(self, has_dT=has_dT)

    def scaled(self, c: int, field: FieldCtx) -> 'LambdaMonomial':
        return replace(self, scalar=field.mul(self.scalar, c))

    def __str__(self) -> str:
        parts = [] if self.scalar == 1 else [str(self.scalar)]
        for i, m in enumerate(self.prime_powers):
            if m:
                parts.append(f"P{i + 1}" if m == 1 else f"P{i + 1}^{m}")
        for i, row in enumerate(self.exponents):
            for k, e in enumerate(row, start=1):
                if e:
                    parts.append(f"l{i + 1}{k}" if e == 1 else f"l{i + 1}{k}^{e}")
        if self.has_dT:
            parts.append('dT')
        return '*'.join(parts) if parts else '1'


class LambdaSum:
    """Finite F_q-linear combination of LambdaMonomials, like terms merged"""

    __slots__ = ('field', 'terms')

    def __init__(self, field: FieldCtx, terms: Optional[Dict[Key, int]] = None):
        self.field = field
        self.terms: Dict[Key, int] = {}
        for key, c in (terms or {}).items():
            self.add_term(key, c)

    @classmethod
    def of(cls, field: FieldCtx, *monomials: LambdaMonomial) -> 'LambdaSum':
        s = cls(field)
        for m in monomials:
            s.add_monomial(m)
        return s

    def add_term(self, key: Key, c: int):
        total = self.field.add(self.terms.get(key, 0), c)
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def add_monomial(self, m: LambdaMonomial):
        self.add_term(m.key, m.scalar)

    def add_sum(self, other: 'LambdaSum'):
        for key, c in other.terms.items():
            self.add_term(key, c)

    def monomials(self) -> Iterator[LambdaMonomial]:
        """Terms in sorted key order"""
        for key in sorted(self.terms):
            yield LambdaMonomial.from_key(key, self.terms[key])

    def is_zero(self) -> bool:
        return not self.terms

    def dT_flags(self) -> set:
        return {has_dT for _, _, has_dT in self.terms}

    def __add__(self, other: 'LambdaSum') -> 'LambdaSum':
        out = LambdaSum(self.field, self.terms)
        out.add_sum(other)
        return out

    def __mul__(self, other: 'LambdaSum') -> 'LambdaSum':
        out = LambdaSum(self.field)
        for a in self.monomials():
            for b in other.monomials():
                out.add_monomial(mono_mul(a, b, self.field))
        return out

    def scale(self, c: int) -> 'LambdaSum':
        return LambdaSum(self.field, {key: self.field.mul(v, c) for key, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LambdaSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return ' + '.join(str(m) for m in self.monomials()) if self.terms else '0'

    def __repr__(self) -> str:
        return f"LambdaSum({self})"


@dataclass(frozen=True)
class WindowPolicy:
    """Anchor prime plus the admissible interval of mu_{i,1} = -e_{i,1} per prime"""
    anchor: int
    windows: Tuple[Tuple[int, int], ...]

    @classmethod
    def default(cls, spec: ModulusSpec, anchor: int = 0) -> 'WindowPolicy':
        """Windows [(n-1)(q-1), nq-(n+1)]"""
        if not 0 <= anchor < spec.num_primes:
            raise InvalidInput(f"anchor {anchor} outside 0..{spec.num_primes - 1}")
        q = spec.q
        windows = tuple(((n - 1) * (q - 1), n * q - (n + 1)) for n in spec.multiplicities)
        policy = cls(anchor, windows)
        policy.check(spec)
        return policy

    def check(self, spec: ModulusSpec):
        if len(self.windows) != spec.num_primes:
            raise InvalidInput("one window per prime is required")
        for lo, hi in self.windows:
            if hi - lo + 1 != spec.q - 1:
                raise InvalidInput(f"window [{lo},{hi}] must hold exactly q-1 = {spec.q - 1} values")


def mono_mul(a: LambdaMonomial, b: LambdaMonomial, field: FieldCtx) -> LambdaMonomial:
    if a.has_dT and b.has_dT:
        raise DTSquared("product of two differentials")
    return LambdaMonomial(
        field.mul(a.scalar, b.scalar),
        tuple(x + y for x, y in zip(a.prime_powers, b.prime_powers)),
        tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.exponents, b.exponents)),
        a.has_dT or b.has_dT,
    )


def rewrite_once(m: LambdaMonomial, i: int, k: int, spec: ModulusSpec) -> LambdaSum:
    """Apply lambda_{i,k}^q = lambda_{i,k-1} + lambda_{i,1}^(q-1) lambda_{i,k} once"""
    q = spec.q
    if k < 2:
        raise NotReducible(f"level {k} has no rewrite rule")
    e = m.exponent(i, k)
    if e < q:
        raise NotReducible(f"exponent {e} of lambda_({i + 1},{k}) is below q = {q}")

    lowered = m.with_exponent(i, k, e - q)
    b_term = lowered.with_exponent(i, k - 1, lowered.exponent(i, k - 1) + 1)

    lifted = m.with_exponent(i, k, e - (q - 1))
    c_term = lifted.with_exponent(i, 1, lifted.exponent(i, 1) + (q - 1))
    return LambdaSum.of(spec.field, b_term, c_term)


def _first_reducible(m: LambdaMonomial, q: int) -> Optional[Tuple[int, int]]:
    """Highest level first within each prime, primes in index order"""
    for i, row in enumerate(m.exponents):
        for k in range(len(row), 1, -1):
            if row[k - 1] >= q:
                return i, k
    return None


def _reduce_levels(s: LambdaSum, spec: ModulusSpec) -> LambdaSum:
    q = spec.q
    done = LambdaSum(spec.field)
    pending = LambdaSum(s.field, s.terms)
    steps = 0
    while pending.terms:
        key = next(iter(pending.terms))
        m = LambdaMonomial.from_key(key, pending.terms.pop(key))
        if any(e < 0 for row in m.exponents for e in row[1:]):
            raise InvalidInput(f"negative exponent of a level >= 2 generator in {m}")
        target = _first_reducible(m, q)
        if target is None:
            done.add_monomial(m)
        else:
            pending.add_sum(rewrite_once(m, *target, spec))
            steps += 1
    logger.debug(f"Level reduction took {steps} rewrite steps")
    return done


def _exchange_window(m: LambdaMonomial, policy: WindowPolicy, spec: ModulusSpec) -> LambdaMonomial:
    """Trade lambda_{i,1}^(q-1) against -P_i until mu_{i,1} lies in its window"""
    q1 = spec.q - 1
    field = spec.field
    for i, (lo, hi) in enumerate(policy.windows):
        mu = -m.exponent(i, 1)
        if mu < lo:
            steps = -((mu - lo) // q1)
            m = m.with_exponent(i, 1, m.exponent(i, 1) - steps * q1)
            m = m.with_prime_power(i, m.prime_powers[i] + steps)
        elif mu > hi:
            steps = -((hi - mu) // q1)
            power = m.prime_powers[i] - steps
            if power < 0:
                raise NegativePower(f"moving {m} into window [{lo},{hi}] of prime {i + 1} "
                                    f"needs P_{i + 1}^{power}")
            m = m.with_exponent(i, 1, m.exponent(i, 1) + steps * q1)
            m = m.with_prime_power(i, power)
        else:
            continue
        if steps % 2:
            m = m.scaled(field.neg(1), field)
    return m


def _to_anchor(m: LambdaMonomial, policy: WindowPolicy, spec: ModulusSpec) -> List[LambdaMonomial]:
    """Rewrite P_j^m (j != anchor) as (P_a + (a_a - a_j))^m, binomially"""
    field = spec.field
    a = policy.anchor
    base = replace(m, prime_powers=(0,) * spec.num_primes)
    # anchor power -> coefficient
    expansion: Dict[int, int] = {m.prime_powers[a]: m.scalar}
    for j, power in enumerate(m.prime_powers):
        if j == a or power == 0:
            continue
        shift = field.sub(spec.roots[a], spec.roots[j])
        nxt: Dict[int, int] = {}
        for t in range(power + 1):
            c = field.mul(field.element(comb(power, t)), field.pow(shift, power - t))
            if c == 0:
                continue
            for existing, coeff in expansion.items():
                total = field.add(nxt.get(existing + t, 0), field.mul(coeff, c))
                nxt[existing + t] = total
        expansion = {t: c for t, c in nxt.items() if c}
    return [replace(base.with_prime_power(a, t), scalar=c) for t, c in sorted(expansion.items())]


def canonicalize(s: LambdaSum, policy: WindowPolicy, spec: ModulusSpec) -> LambdaSum:
    """Bring every term into the windows of policy; the value is unchanged"""
    reduced = _reduce_levels(s, spec)
    out = LambdaSum(spec.field)
    for m in reduced.monomials():
        for term in _to_anchor(_exchange_window(m, policy, spec), policy, spec):
            out.add_monomial(term)
    return out
