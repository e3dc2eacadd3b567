# ============================================================================
# algebra/linalg.py - Dense matrices over F_q and Gaussian elimination
# ============================================================================
"""Matrices are numpy int64 arrays of element codes. Over a prime field the
codes are residues and arithmetic is integer arithmetic mod p; over GF(p^r)
with r > 1 every operation goes through the field's numpy tables by fancy
indexing.
"""

from typing import List, Sequence

import numpy as np

from algebra.field import FieldCtx


def _as_array(rows) -> np.ndarray:
    array = np.array(rows, dtype=np.int64)
    return array.reshape(0, 0) if array.size == 0 else array


def vadd(field: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if field.r == 1:
        return (a + b) % field.p
    return field.add_array[a, b]


def vneg(field: FieldCtx, a: np.ndarray) -> np.ndarray:
    if field.r == 1:
        return (-a) % field.p
    return field.neg_array[a]


def vmul(field: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if field.r == 1:
        return (a * b) % field.p
    return field.mul_array[a, b]


def matmul(field: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if field.r == 1:
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = field.add_array[out, field.mul_array[a[:, j, None], b[None, j, :]]]
    return out


def row_echelon(field: FieldCtx, m: np.ndarray) -> int:
    """Reduce m in place to row echelon form; returns the rank"""
    nrows, ncols = m.shape
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nonzero = np.nonzero(m[r:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = r + nonzero[0]
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = vmul(field, np.int64(field.inv(int(m[r, col]))), m[r])
        below = r + 1 + np.nonzero(m[r + 1:, col])[0]
        if below.size:
            factors = vneg(field, m[below, col])
            m[below] = vadd(field, m[below], vmul(field, factors[:, None], m[r][None, :]))
        r += 1
    return r


def rank(field: FieldCtx, rows: Sequence[Sequence[int]]) -> int:
    """Rank over F_q by row reduction"""
    m = _as_array(rows)
    if m.size == 0:
        return 0
    return row_echelon(field, m.copy())


class FqMatrix:
    """Matrix over F_q backed by a numpy array of element codes"""

    __slots__ = ('field', 'entries')

    def __init__(self, field: FieldCtx, rows):
        self.field = field
        self.entries = _as_array(rows)

    @classmethod
    def identity(cls, field: FieldCtx, n: int) -> 'FqMatrix':
        return cls(field, np.identity(n, dtype=np.int64))

    @property
    def shape(self):
        return self.entries.shape

    def __matmul__(self, other: 'FqMatrix') -> 'FqMatrix':
        return FqMatrix(self.field, matmul(self.field, self.entries, other.entries))

    def __add__(self, other: 'FqMatrix') -> 'FqMatrix':
        return FqMatrix(self.field, vadd(self.field, self.entries, other.entries))

    def __sub__(self, other: 'FqMatrix') -> 'FqMatrix':
        return FqMatrix(self.field, vadd(self.field, self.entries, vneg(self.field, other.entries)))

    def __pow__(self, e: int) -> 'FqMatrix':
        if e < 0:
            raise ValueError("negative matrix power")
        result = FqMatrix.identity(self.field, self.shape[0])
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, FqMatrix) and self.field == other.field
                and np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.shape, self.entries.tobytes()))

    def is_zero(self) -> bool:
        return not self.entries.any()

    def is_identity(self) -> bool:
        n, m = self.shape
        return n == m and np.array_equal(self.entries, np.identity(n, dtype=np.int64))

    def is_diagonal(self) -> bool:
        return not (self.entries - np.diag(np.diag(self.entries))).any()

    def trace(self) -> int:
        acc = 0
        for x in np.diag(self.entries).tolist():
            acc = self.field.add(acc, x)
        return acc

    def rank(self) -> int:
        return rank(self.field, self.entries)

    def is_invertible(self) -> bool:
        n, m = self.shape
        return n == m and self.rank() == n

    def to_lists(self) -> List[List[int]]:
        return self.entries.tolist()

    def __repr__(self) -> str:
        return f"FqMatrix({self.to_lists()}, {self.field!r})"
