# ============================================================================
# services/verification.py - Oracle and cardinality suites behind `verify`
# ============================================================================

from dataclasses import dataclass, field as dc_field
from typing import Callable, List

import config
from algebra.field import field_for_order
from algebra.linalg import FqMatrix
from algebra.modulus import ModulusSpec, euler_phi, moduli_up_to, unit_order, units_enumerate
from services.differentials import (
    certified_holomorphic,
    count_via_series,
    enumerate_basis,
    enumerate_generators,
    fold_tuple,
    genus,
)
from services.galois_repr import representation_table, sigma_apply
from services.gaps import order_sequence
from services.lambda_algebra import LambdaMonomial, LambdaSum, WindowPolicy, canonicalize
from services.oracle import oracle_build, oracle_embed, oracle_independent, sigma_images
from utils.errors import AlgebraError
from utils.logger import setup_logger

logger = setup_logger(__name__)

PASS, FAIL, SKIP = 'pass', 'fail', 'skip'


@dataclass
class SuiteResult:
    suite: str
    modulus: str
    status: str
    detail: str = ''

    def to_dict(self) -> dict:
        return {"suite": self.suite, "modulus": self.modulus, "status": self.status, "detail": self.detail}


@dataclass
class VerificationReport:
    q: int
    max_deg: int
    results: List[SuiteResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def counts(self) -> dict:
        return {status: sum(r.status == status for r in self.results) for status in (PASS, FAIL, SKIP)}

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "max_deg": self.max_deg,
            "passed": self.passed,
            "counts": self.counts(),
            "suites": [r.to_dict() for r in self.results],
        }


class SuiteFailure(AssertionError):
    pass


def _expect(condition: bool, message: str):
    if not condition:
        raise SuiteFailure(message)


class VerificationRunner:
    """Runs every suite on one modulus; failures are recorded, never raised"""

    def __init__(self, spec: ModulusSpec, max_genus: int = config.MAX_GENUS,
                 max_units: int = config.MAX_UNITS):
        self.spec = spec
        self.max_genus = max_genus
        self.max_units = max_units
        self.genus = genus(spec)
        self.anchors = range(spec.num_primes)
        self.results: List[SuiteResult] = []
        self._ring = None

    def run(self) -> List[SuiteResult]:
        self._run('cardinality', self.cardinality_suite)
        self._run('holomorphy', self.holomorphy_suite)
        self._run('gaps', self.gaps_suite)
        self._run('relations', self.relations_suite)
        self._run('canonicalize', self.canonicalize_suite)
        self._run('independence', self.independence_suite)
        self._run('sigma', self.sigma_suite)
        self._run('representation', self.representation_suite)
        return self.results

    def _run(self, name: str, suite: Callable[[], str]):
        label = self.spec.label()
        try:
            detail = suite()
            status = SKIP if detail.startswith('skipped') else PASS
            self.results.append(SuiteResult(name, label, status, detail))
        except (SuiteFailure, AlgebraError) as e:
            logger.error(f"Suite {name} failed for {label}: {e}")
            self.results.append(SuiteResult(name, label, FAIL, str(e)))

    # Oracle access
    def _oracle_ok(self) -> bool:
        return euler_phi(self.spec) <= config.VERIFY_MAX_ORACLE_DIM

    @property
    def ring(self):
        if self._ring is None:
            self._ring = oracle_build(self.spec, config.VERIFY_MAX_ORACLE_DIM)
        return self._ring

    def _generator_sums(self) -> List[LambdaSum]:
        return [LambdaSum.of(self.spec.field, t.to_monomial(self.spec, 0))
                for t in enumerate_generators(self.spec, self.max_genus)]

    # Suites
    def cardinality_suite(self) -> str:
        for a in self.anchors:
            size = len(enumerate_basis(self.spec, a, self.max_genus))
            count = count_via_series(self.spec, a)
            _expect(size == self.genus == count,
                    f"anchor {a + 1}: |basis| = {size}, genus = {self.genus}, series count = {count}")
        return f"genus {self.genus} at {len(self.anchors)} anchors"

    def holomorphy_suite(self) -> str:
        generators = set(enumerate_generators(self.spec, self.max_genus))
        for a in self.anchors:
            for t in enumerate_basis(self.spec, a, self.max_genus):
                _expect(certified_holomorphic(t.to_monomial(self.spec, a), self.spec),
                        f"basis tuple {t} at anchor {a + 1} is not certified holomorphic")
                _expect(fold_tuple(t, self.spec, a) in generators,
                        f"folded tuple of {t} at anchor {a + 1} is not a generator")
        return f"{len(generators)} generators"

    def gaps_suite(self) -> str:
        if self.spec.num_primes != 1 or self.genus == 0:
            return 'skipped: not a prime power of positive genus'
        orders = order_sequence(self.spec, self.max_genus)
        _expect(len(orders) == self.genus, f"{len(orders)} orders for genus {self.genus}")
        _expect(orders.orders[0] == 0, f"smallest order is {orders.orders[0]}")
        return 'orders ' + ';'.join(str(o) for o in orders.orders)

    def relations_suite(self) -> str:
        if not self._oracle_ok():
            return 'skipped: oracle ring too large'
        spec, ring, field = self.spec, self.ring, self.spec.field
        q = spec.q
        checked = 0
        for i, n in enumerate(spec.multiplicities):
            lam1 = LambdaMonomial.generator(spec, i, 1, q - 1)
            minus_p = LambdaMonomial.unit(spec, scalar=field.neg(1)).with_prime_power(i, 1)
            _expect(oracle_embed(LambdaSum.of(field, lam1), ring) == oracle_embed(LambdaSum.of(field, minus_p), ring),
                    f"lambda_({i + 1},1)^(q-1) != -P_{i + 1}")
            checked += 1
            for k in range(2, n + 1):
                lhs = LambdaSum.of(field, LambdaMonomial.generator(spec, i, k, q))
                lower = LambdaMonomial.generator(spec, i, k - 1)
                mixed = LambdaMonomial.generator(spec, i, k).with_exponent(i, 1, q - 1)
                rhs = LambdaSum.of(field, lower, mixed)
                _expect(oracle_embed(lhs, ring) == oracle_embed(rhs, ring),
                        f"lambda_({i + 1},{k})^q relation fails")
                checked += 1
        return f"{checked} relations"

    def canonicalize_suite(self) -> str:
        if not self._oracle_ok():
            return 'skipped: oracle ring too large'
        sums = self._generator_sums()
        for a in self.anchors:
            policy = WindowPolicy.default(self.spec, a)
            for s in sums:
                _expect(oracle_embed(canonicalize(s, policy, self.spec), self.ring) == oracle_embed(s, self.ring),
                        f"canonicalize changes the value of {s} at anchor {a + 1}")
        return f"{len(sums)} generator monomials"

    def independence_suite(self) -> str:
        if self.genus == 0:
            return 'skipped: genus 0'
        if not self._oracle_ok():
            return 'skipped: oracle ring too large'
        for a in self.anchors:
            basis = [LambdaSum.of(self.spec.field, t.to_monomial(self.spec, a))
                     for t in enumerate_basis(self.spec, a, self.max_genus)]
            _expect(oracle_independent(basis, self.ring), f"basis at anchor {a + 1} is dependent")
        return f"rank {self.genus}"

    def sigma_suite(self) -> str:
        if not self._oracle_ok():
            return 'skipped: oracle ring too large'
        units = units_enumerate(self.spec, self.max_units)
        if len(units) > config.VERIFY_MAX_REP_UNITS:
            return 'skipped: unit group too large'
        sums = self._generator_sums()
        policy = WindowPolicy.default(self.spec, 0)
        for A in units:
            images = sigma_images(A, self.ring)
            for s in sums:
                _expect(oracle_embed(sigma_apply(A, s, self.spec, policy), self.ring)
                        == oracle_embed(s, self.ring, images),
                        f"sigma_{A} disagrees with substitution on {s}")
        return f"{len(units)} units x {len(sums)} generator monomials"

    def representation_suite(self) -> str:
        if self.genus == 0:
            return 'skipped: genus 0'
        if euler_phi(self.spec) > config.VERIFY_MAX_REP_UNITS:
            return 'skipped: unit group too large'
        spec = self.spec
        p = spec.field.p
        traces = None
        for a in self.anchors:
            table = representation_table(spec, a, self.max_units, self.max_genus)
            identity = FqMatrix.identity(spec.field, self.genus)
            for A in table.units:
                rho = table[A]
                _expect(rho.is_invertible(), f"rho({A}) is singular")
                if spec.is_squarefree():
                    _expect(rho.is_diagonal(), f"rho({A}) is not diagonal")
                order = unit_order(A, spec)
                if order > 1 and _is_power_of(order, p):
                    _expect(((rho - identity) ** order).is_zero(), f"rho({A}) - I is not nilpotent")
            anchor_traces = [table[A].trace() for A in table.units]
            if traces is not None:
                _expect(anchor_traces == traces, f"traces at anchor {a + 1} differ from anchor 1")
            traces = anchor_traces
        return f"{len(traces)} matrices of degree {self.genus}"


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def run_suites(q: int, max_deg: int = config.DEFAULT_VERIFY_MAX_DEG,
               max_genus: int = config.MAX_GENUS, max_units: int = config.MAX_UNITS) -> VerificationReport:
    """Every suite over every split modulus with 2 <= deg M <= max_deg; a modulus over
    max_genus or max_units records failing suites instead of aborting the run"""
    field = field_for_order(q)
    report = VerificationReport(q, max_deg)
    moduli = moduli_up_to(field, max_deg, min_deg=2)
    logger.info(f"Verifying {len(moduli)} moduli over GF({q}) up to degree {max_deg}")
    for spec in moduli:
        report.results.extend(VerificationRunner(spec, max_genus, max_units).run())
    logger.info(f"Verification finished: {report.counts()}")
    return report
