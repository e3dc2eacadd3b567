# ============================================================================
# algebra/polynomial.py - Univariate polynomials over F_q in the variable T
# ============================================================================

from typing import Iterable, Tuple

from algebra.field import FieldCtx

VARIABLE = 'T'


def _trim(coeffs: list) -> Tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial in F_q[T], coefficients lowest degree first.

    Invariant: the last coefficient is nonzero; () is the zero polynomial.
    Instances are immutable and hashable.
    """

    __slots__ = ('field', 'coeffs')

    def __init__(self, field: FieldCtx, coeffs: Iterable[int] = ()):
        self.field = field
        self.coeffs = _trim(list(coeffs))

    # Constructors
    @classmethod
    def zero(cls, field: FieldCtx) -> 'Poly':
        return cls(field)

    @classmethod
    def one(cls, field: FieldCtx) -> 'Poly':
        return cls(field, (1,))

    @classmethod
    def constant(cls, field: FieldCtx, c: int) -> 'Poly':
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: FieldCtx, c: int, k: int) -> 'Poly':
        return cls(field, [0] * k + [c])

    @classmethod
    def variable(cls, field: FieldCtx) -> 'Poly':
        return cls(field, (0, 1))

    @classmethod
    def linear(cls, field: FieldCtx, root: int) -> 'Poly':
        """The monic linear polynomial T - root"""
        return cls(field, (field.neg(root), 1))

    # Basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Graded lexicographic key on coefficient vectors"""
        return (self.degree, self.coeffs)

    # Arithmetic
    def _check(self, other: 'Poly'):
        if self.field != other.field:
            raise ValueError(f"polynomials over different fields: {self.field} and {other.field}")

    def __add__(self, other: 'Poly') -> 'Poly':
        self._check(other)
        add = self.field.add_table
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = add[out[i]][y]
        return Poly(self.field, out)

    def __neg__(self) -> 'Poly':
        neg = self.field.neg_table
        return Poly(self.field, [neg[c] for c in self.coeffs])

    def __sub__(self, other: 'Poly') -> 'Poly':
        return self + (-other)

    def scale(self, c: int) -> 'Poly':
        if c == 0:
            return Poly(self.field)
        row = self.field.mul_table[c]
        return Poly(self.field, [row[x] for x in self.coeffs])

    def __mul__(self, other: 'Poly') -> 'Poly':
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field)
        F = self.field
        out = [0] * (len(a) + len(b) - 1)
        if F.r == 1:
            p = F.p
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly(F, [c % p for c in out])
        add, mul = F.add_table, F.mul_table
        for i, x in enumerate(a):
            if x:
                row = mul[x]
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add[out[i + j]][row[y]]
        return Poly(F, out)

    def __pow__(self, e: int) -> 'Poly':
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: 'Poly') -> Tuple['Poly', 'Poly']:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = F.inv(other.leading)
        quot = [0] * max(len(rem) - db, 0)
        for shift in range(len(rem) - 1 - db, -1, -1):
            c = mul[rem[shift + db]][inv_lead]
            if c == 0:
                continue
            quot[shift] = c
            nc = neg[c]
            for i, bi in enumerate(other.coeffs):
                if bi:
                    rem[shift + i] = add[rem[shift + i]][mul[nc][bi]]
        return Poly(F, quot), Poly(F, rem[:db] if db > 0 else [])

    def __floordiv__(self, other: 'Poly') -> 'Poly':
        return divmod(self, other)[0]

    def __mod__(self, other: 'Poly') -> 'Poly':
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        """Evaluate at an element of F_q (Horner)"""
        add, mul = self.field.add_table, self.field.mul_table
        y = 0
        for c in reversed(self.coeffs):
            y = add[mul[y][x]][c]
        return y

    def monic(self) -> 'Poly':
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading))

    def gcd(self, other: 'Poly') -> 'Poly':
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def frobenius(self, j: int = 1) -> 'Poly':
        """c -> c^(q^j); coefficients are fixed, T goes to T^(q^j)"""
        if j == 0 or self.degree < 1:
            return self
        step = self.field.q ** j
        out = [0] * (self.degree * step + 1)
        for k, c in enumerate(self.coeffs):
            out[k * step] = c
        return Poly(self.field, out)

    # Comparison and display
    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return '0'
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            cs = self.field.format(c)
            if k == 0:
                terms.append(cs)
                continue
            mon = VARIABLE if k == 1 else f"{VARIABLE}^{k}"
            if cs == '1':
                terms.append(mon)
            elif '+' in cs:
                terms.append(f"({cs})*{mon}")
            else:
                terms.append(f"{cs}*{mon}")
        return '+'.join(terms)

    def __repr__(self) -> str:
        return f"Poly({self}, {self.field!r})"
