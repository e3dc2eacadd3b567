# ============================================================================
# services/galois_repr.py - Action of (F_q[T]/(M))* on differentials
# ============================================================================

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import config
from algebra.linalg import FqMatrix
from algebra.modulus import (
    ModulusSpec,
    padic_digits,
    reduce_unit,
    unit_mul,
    units_enumerate,
)
from algebra.polynomial import Poly
from services.differentials import ExponentTuple, enumerate_basis
from services.lambda_algebra import (
    LambdaMonomial,
    LambdaSum,
    WindowPolicy,
    canonicalize,
)
from utils.errors import InternalInvariant, InvalidInput
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass
class RepresentationTable:
    """sigma_A as matrices in the anchored basis, columns are images of basis vectors"""
    spec: ModulusSpec
    anchor: int
    basis: List[ExponentTuple]
    units: List[Poly]
    matrices: Dict[Poly, FqMatrix]

    def __getitem__(self, A: Poly) -> FqMatrix:
        return self.matrices[A % self.spec.modulus]

    def __len__(self) -> int:
        return len(self.matrices)

    def kernel(self) -> List[Poly]:
        return [A for A in self.units if self.matrices[A].is_identity()]


def _generator_image(spec: ModulusSpec, i: int, k: int, digits: Tuple[int, ...]) -> LambdaSum:
    """sigma_A(lambda_{i,k}) = sum_{l<k} alpha_l lambda_{i,k-l}"""
    image = LambdaSum(spec.field)
    for l in range(k):
        if digits[l]:
            image.add_monomial(LambdaMonomial.generator(spec, i, k - l).scaled(digits[l], spec.field))
    return image


def sigma_apply(A: Poly, s: LambdaSum, spec: ModulusSpec,
                policy: Optional[WindowPolicy] = None) -> LambdaSum:
    """Apply sigma_A to a lambda-sum and canonicalize the result"""
    A = reduce_unit(A, spec)
    field = spec.field
    if policy is None:
        policy = WindowPolicy.default(spec, 0)
    digits = [padic_digits(A, spec.prime(i), n).digits for i, n in enumerate(spec.multiplicities)]
    images: Dict[Tuple[int, int], LambdaSum] = {}

    out = LambdaSum(field)
    for m in s.monomials():
        # lambda_{i,1} is an eigenvector: any power, either sign, picks up alpha_{i,0}^e
        scalar = m.scalar
        for i, row in enumerate(m.exponents):
            scalar = field.mul(scalar, field.pow(digits[i][0], row[0]))
        head = LambdaMonomial(scalar, m.prime_powers,
                              tuple((row[0],) + (0,) * (len(row) - 1) for row in m.exponents),
                              m.has_dT)
        term = LambdaSum.of(field, head)
        for i, row in enumerate(m.exponents):
            for k, e in enumerate(row[1:], start=2):
                if e < 0:
                    raise InvalidInput(f"negative exponent of lambda_({i + 1},{k}) in {m}")
                if e == 0:
                    continue
                if (i, k) not in images:
                    images[(i, k)] = _generator_image(spec, i, k, digits[i])
                for _ in range(e):
                    term = term * images[(i, k)]
        out.add_sum(term)
    return canonicalize(out, policy, spec)


def _coordinates(image: LambdaSum, index: Dict[ExponentTuple, int], anchor: int,
                 A: Poly, source: ExponentTuple) -> Dict[int, int]:
    coords = {}
    for m in image.monomials():
        if not m.has_dT or any(p for i, p in enumerate(m.prime_powers) if i != anchor):
            raise InternalInvariant(f"sigma_{A} of {source} produced the non-basis term {m}")
        t = ExponentTuple.from_monomial(m, anchor)
        if t not in index:
            raise InternalInvariant(f"sigma_{A} of {source} produced {t}, which is outside the basis")
        coords[index[t]] = m.scalar
    return coords


def rep_matrix(A: Poly, spec: ModulusSpec, anchor: int = 0,
               basis: Optional[Sequence[ExponentTuple]] = None) -> FqMatrix:
    """Column j holds the coordinates of sigma_A(basis_j)"""
    policy = WindowPolicy.default(spec, anchor)
    if basis is None:
        basis = enumerate_basis(spec, anchor)
    g = len(basis)
    if g == 0:
        raise InvalidInput(f"modulus {spec} has genus 0; there is nothing to represent")
    index = {t: j for j, t in enumerate(basis)}
    field = spec.field
    rows = [[0] * g for _ in range(g)]
    for j, t in enumerate(basis):
        image = sigma_apply(A, LambdaSum.of(field, t.to_monomial(spec, anchor)), spec, policy)
        for i, c in _coordinates(image, index, anchor, A, t).items():
            rows[i][j] = c
    return FqMatrix(field, rows)


def _verify_table(table: RepresentationTable):
    spec = table.spec
    g = len(table.basis)
    one = Poly.one(spec.field)
    if not table.matrices[one].is_identity():
        raise InternalInvariant(f"rho(1) is not the identity for {spec}")

    units = table.units
    if len(units) <= config.VERIFY_MAX_REP_UNITS:
        partners = units
    else:
        partners = units[:config.VERIFY_MAX_REP_UNITS]
        logger.info(f"Homomorphism check for {spec} uses {len(partners)} partner units per unit")

    for A in units:
        rho_A = table.matrices[A]
        for B in partners:
            if table.matrices[unit_mul(A, B, spec)] != rho_A @ table.matrices[B]:
                raise InternalInvariant(f"rho({A}*{B}) != rho({A}) rho({B}) for {spec}")
    logger.info(f"Representation of {spec} verified: {len(units)} units, degree {g}")


def representation_table(spec: ModulusSpec, anchor: int = 0,
                         max_units: int = config.MAX_UNITS,
                         max_genus: int = config.MAX_GENUS) -> RepresentationTable:
    """Matrices for every unit, verified before return"""
    units = units_enumerate(spec, max_units)
    basis = enumerate_basis(spec, anchor, max_genus)
    if not basis:
        raise InvalidInput(f"modulus {spec} has genus 0; there is nothing to represent")

    logger.info(f"Building representation of {spec} at anchor {anchor}: {len(units)} units")
    matrices = {A: rep_matrix(A, spec, anchor, basis) for A in units}
    table = RepresentationTable(spec, anchor, basis, units, matrices)
    _verify_table(table)
    return table


def rep_record(A: Poly, matrix: FqMatrix, basis: Sequence[ExponentTuple]) -> dict:
    return {
        "unit": str(A),
        "matrix": matrix.to_lists(),
        "basis_ref": [[t.mu0, t.mu_json()] for t in basis],
    }
