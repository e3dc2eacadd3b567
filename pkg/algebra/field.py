# ============================================================================
# algebra/field.py - Exact arithmetic in F_q, q = p^r
# ============================================================================

from itertools import product
from typing import Dict, Final, List, Optional, Sequence, Tuple

import conway_polynomials
import numpy as np

from utils.errors import InvalidInput, NotIrreducible, NotPrime
from utils.logger import setup_logger

logger = setup_logger(__name__)

# p -> r -> Conway polynomial of GF(p^r), lowest degree first
CONWAY: Final[Dict[int, Dict[int, Tuple[int, ...]]]] = conway_polynomials.database()

GENERATOR_SYMBOL: Final = 'g'


def is_prime(n: int) -> bool:
    """Trial division primality test"""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> Tuple[int, int]:
    """Split q = p^r, raising NotPrime when q is not a prime power"""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, r


def _fp_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Remainder of a by the monic polynomial b over F_p (lowest degree first)"""
    a = _fp_trim(list(a))
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _fp_trim(a)
    return a


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2"""
    r = len(poly) - 1
    if r < 1:
        return False
    for d in range(1, r // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _fp_mod(poly, list(low) + [1], p):
                return False
    return True


def conway_polynomial(p: int, r: int) -> Tuple[int, ...]:
    """Conway polynomial of GF(p^r) from the conway_polynomials database"""
    try:
        return tuple(int(c) for c in CONWAY[p][r])
    except KeyError:
        raise NotIrreducible(f"no Conway polynomial is known for GF({p}^{r})") from None


class FieldCtx:
    """The finite field F_q with elements encoded as integers 0..q-1.

    The integer code of an element is sum(c_i * p^i), where c_i is its
    coordinate on g^i in the power basis of the generator g. Prime-field
    elements are therefore their own residues.
    """

    __slots__ = ('p', 'r', 'q', 'defining_poly', 'add_table', 'mul_table',
                 'neg_table', 'inv_table', 'add_array', 'mul_array', 'neg_array')

    def __init__(self, p: int, r: int = 1, defining_poly: Optional[Sequence[int]] = None):
        if p < 2 or r < 1:
            raise InvalidInput(f"field parameters out of range: p={p}, r={r}")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")

        if defining_poly is None:
            if r == 1:
                defining_poly = (0, 1)
            else:
                defining_poly = conway_polynomial(p, r)
        else:
            defining_poly = tuple(int(c) % p for c in defining_poly)
            if len(defining_poly) != r + 1 or defining_poly[-1] != 1:
                raise NotIrreducible(f"defining polynomial must be monic of degree {r}")
            if not _is_irreducible(defining_poly, p):
                raise NotIrreducible(f"defining polynomial {defining_poly} is reducible over F_{p}")

        self.p = p
        self.r = r
        self.q = p ** r
        self.defining_poly = tuple(defining_poly)
        self._build_tables()

    def _build_tables(self):
        q, p = self.q, self.p
        coords = [self.coords(a) for a in range(q)]

        self.add_table = [[self.from_coords([(x + y) % p for x, y in zip(coords[a], coords[b])])
                           for b in range(q)] for a in range(q)]
        self.neg_table = [self.from_coords([(-x) % p for x in coords[a]]) for a in range(q)]

        mul_table = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * self.r - 1)
                for i, x in enumerate(coords[a]):
                    if x:
                        for j, y in enumerate(coords[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                if self.r > 1:
                    prod = _fp_mod(prod, self.defining_poly, p)
                c = self.from_coords(prod)
                mul_table[a][b] = mul_table[b][a] = c
        self.mul_table = mul_table

        inv_table = [0] * q
        for a in range(1, q):
            inv_table[a] = next(b for b in range(1, q) if mul_table[a][b] == 1)
        self.inv_table = inv_table

        self.add_array = np.array(self.add_table, dtype=np.int64)
        self.mul_array = np.array(self.mul_table, dtype=np.int64)
        self.neg_array = np.array(self.neg_table, dtype=np.int64)
        logger.debug(f"Built arithmetic tables for GF({q}) over {self.defining_poly}")

    # Encoding
    def coords(self, a: int) -> Tuple[int, ...]:
        """Coordinates of a in the power basis of the generator"""
        out = []
        for _ in range(self.r):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coords(self, coords: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(coords)):
            code = code * self.p + (c % self.p)
        return code

    def element(self, n: int) -> int:
        """Image of the integer n in the prime subfield"""
        return n % self.p

    @property
    def generator(self) -> int:
        """The element g (equal to 0 for prime fields, where g is not used)"""
        return self.p if self.r > 1 else 0

    def elements(self) -> range:
        return range(self.q)

    # Arithmetic
    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul_table[result][a]
            a = self.mul_table[a][a]
            e >>= 1
        return result

    def format(self, a: int) -> str:
        """Text encoding: decimal for prime fields, polynomial in g otherwise"""
        if self.r == 1:
            return str(a)
        terms = []
        for k, c in reversed(list(enumerate(self.coords(a)))):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = GENERATOR_SYMBOL if k == 1 else f"{GENERATOR_SYMBOL}^{k}"
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return '+'.join(terms) if terms else '0'

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldCtx) and self.p == other.p and self.r == other.r
                and self.defining_poly == other.defining_poly)

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.defining_poly))

    def __repr__(self) -> str:
        return f"GF({self.q})"


def field_make(p: int, r: int = 1, defining_poly: Optional[Sequence[int]] = None) -> FieldCtx:
    """Build a field context, validating p and the defining polynomial"""
    return FieldCtx(p, r, defining_poly)


def field_for_order(q: int) -> FieldCtx:
    """Build F_q from its order"""
    p, r = prime_power(q)
    return FieldCtx(p, r)
