# ============================================================================
# services/differentials.py - Holomorphic differentials: valuations, bases, genus
# ============================================================================

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import config
from algebra.modulus import ModulusSpec, euler_phi
from services.lambda_algebra import LambdaMonomial, WindowPolicy
from utils.errors import InternalInvariant, InvalidInput, SizeLimit
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True, order=True)
class ExponentTuple:
    """(mu_0; mu_{j,k}) with mu[j][k - 1] = mu_{j,k}.

    The differential it names is
        P_anchor^mu0 * prod_j lambda_{j,1}^(-mu_{j,1}) * prod_{k>=2} lambda_{j,k}^mu_{j,k} * dT
    Ordering is lexicographic on (mu0, mu_{1,1}, mu_{1,2}, ..., mu_{2,1}, ...).
    """
    mu0: int
    mu: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_monomial(cls, m: LambdaMonomial, anchor: int) -> 'ExponentTuple':
        mu = tuple((-row[0],) + tuple(row[1:]) for row in m.exponents)
        return cls(m.prime_powers[anchor], mu)

    def to_monomial(self, spec: ModulusSpec, anchor: int = 0) -> LambdaMonomial:
        powers = [0] * spec.num_primes
        powers[anchor] = self.mu0
        exponents = tuple((-row[0],) + tuple(row[1:]) for row in self.mu)
        return LambdaMonomial(1, tuple(powers), exponents, True)

    def level_one(self, j: int) -> int:
        return self.mu[j][0]

    def mu_json(self) -> List[List[int]]:
        """[[j, k, value], ...] with 1-based prime index j and level k"""
        return [[j + 1, k + 1, v] for j, row in enumerate(self.mu) for k, v in enumerate(row)]

    def __str__(self) -> str:
        blocks = '; '.join(','.join(str(v) for v in row) for row in self.mu)
        return f"({self.mu0}; {blocks})"


@dataclass(frozen=True)
class ValuationReport:
    finite: Tuple[int, ...]
    infinity_bound: int

    def is_holomorphic(self) -> bool:
        return all(v >= 0 for v in self.finite) and self.infinity_bound >= 0


@dataclass
class CountSeries:
    """Laurent coefficients a_m of one prime's local exponent choices"""
    prime: int
    coeffs: Dict[int, int] = dc_field(default_factory=dict)

    def add(self, m: int, count: int = 1):
        self.coeffs[m] = self.coeffs.get(m, 0) + count

    def total(self) -> int:
        return sum(self.coeffs.values())


# ----------------------------------------------------------------------------
# Riemann-Hurwitz
# ----------------------------------------------------------------------------

def wild_exponent(q: int, n: int) -> int:
    """s = n q^n - (n+1) q^(n-1), the different exponent at a prime above P^n"""
    return n * q ** n - (n + 1) * q ** (n - 1)


def different_degree(spec: ModulusSpec) -> int:
    q = spec.q
    phi = euler_phi(spec)
    total = 0
    for n in spec.multiplicities:
        local_phi = q ** (n - 1) * (q - 1)
        total += (phi // local_phi) * wild_exponent(q, n)
    return total + (phi // (q - 1)) * (q - 2)


def genus(spec: ModulusSpec) -> int:
    d = different_degree(spec)
    if d % 2:
        raise InternalInvariant(f"different degree {d} of {spec} is odd")
    g = 1 - euler_phi(spec) + d // 2
    if g < 0:
        raise InternalInvariant(f"negative genus {g} for {spec}")
    return g


def genus_closed_form_prime_power(q: int, n: int) -> int:
    """Coefficient extraction for M = P^n, alternating binomial sum"""
    upper = ((n - 1) * q - (n + 1)) // q
    return sum((-1) ** l * comb(n - 1, l) * comb((n - 1 - l) * q - 1, n) for l in range(upper + 1))


def genus_prime_power(q: int, n: int) -> int:
    """q^(n-1) [(q-1)(n-1)/2 - 1] + 1"""
    return q ** (n - 1) * ((q - 1) * (n - 1) - 2) // 2 + 1


def genus_closed_form_squarefree(q: int, r: int) -> int:
    """Genus for r distinct linear primes; r = 2 gives (q-3)(q-2)/2"""
    return 1 - (q - 1) ** r + (r + 1) * (q - 1) ** (r - 1) * (q - 2) // 2


# ----------------------------------------------------------------------------
# Valuations
# ----------------------------------------------------------------------------

def mono_valuations(m: LambdaMonomial, spec: ModulusSpec) -> ValuationReport:
    """Exact valuations at the finite ramified primes, certified bound at infinity"""
    q = spec.q
    delta = 1 if m.has_dT else 0
    finite = []
    for i, n in enumerate(spec.multiplicities):
        v = delta * wild_exponent(q, n) + q ** (n - 1) * (q - 1) * m.prime_powers[i]
        for k, e in enumerate(m.exponents[i], start=1):
            v += q ** (n - k) * e
        finite.append(v)

    inf = -delta * q - (q - 1) * sum(m.prime_powers)
    for row in m.exponents:
        inf -= row[0]
        inf -= sum(max(e, 0) for e in row[1:])
    return ValuationReport(tuple(finite), inf)


def certified_holomorphic(m: LambdaMonomial, spec: ModulusSpec) -> bool:
    return mono_valuations(m, spec).is_holomorphic()


# ----------------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------------

def mu0_bound(spec: ModulusSpec) -> int:
    q = spec.q
    return sum(n * q - (n + 1) for n in spec.multiplicities) // (q - 1)


def _upper_levels(q: int, n: int) -> List[Tuple[int, ...]]:
    return list(product(range(q), repeat=n - 1))


def _local_choices(spec: ModulusSpec, j: int, lo: int, hi: int) -> List[Tuple[int, ...]]:
    q, n = spec.q, spec.multiplicities[j]
    return [(mu1,) + rest for mu1 in range(lo, hi + 1) for rest in _upper_levels(q, n)]


def _check_genus(spec: ModulusSpec, max_genus: int) -> int:
    g = genus(spec)
    if g > max_genus:
        raise SizeLimit(f"genus {g} of {spec} exceeds the limit of {max_genus}")
    return g


def enumerate_basis(spec: ModulusSpec, anchor: int = 0, max_genus: int = config.MAX_GENUS) -> List[ExponentTuple]:
    """All integer points of the anchored inequality system, in lexicographic order"""
    policy = WindowPolicy.default(spec, anchor)
    _check_genus(spec, max_genus)
    local = [_local_choices(spec, j, lo, hi) for j, (lo, hi) in enumerate(policy.windows)]

    logger.info(f"Enumerating basis of {spec} at anchor {anchor}")
    found = []
    for mu0 in range(mu0_bound(spec) + 1):
        for mu in product(*local):
            t = ExponentTuple(mu0, tuple(mu))
            if certified_holomorphic(t.to_monomial(spec, anchor), spec):
                found.append(t)
    found.sort()
    logger.info(f"Basis of {spec} at anchor {anchor} has {len(found)} elements")
    return found


def enumerate_generators(spec: ModulusSpec, max_genus: int = config.MAX_GENUS) -> List[ExponentTuple]:
    """Generator system: no mu_0, mu_{j,1} bounded above by n_j q - (n_j + 1) only"""
    _check_genus(spec, max_genus)
    q = spec.q
    highs = [n * q - (n + 1) for n in spec.multiplicities]
    local = []
    for j, hi in enumerate(highs):
        # infinity inequality: mu_{j,1} >= q - sum of the other primes' maxima
        lo = q - (sum(highs) - hi)
        local.append(_local_choices(spec, j, lo, hi))

    found = []
    for mu in product(*local):
        t = ExponentTuple(0, tuple(mu))
        if certified_holomorphic(t.to_monomial(spec, 0), spec):
            found.append(t)
    found.sort()
    logger.info(f"Generator set of {spec} has {len(found)} elements")
    return found


def fold_tuple(t: ExponentTuple, spec: ModulusSpec, anchor: int = 0) -> ExponentTuple:
    """Absorb P_anchor^mu0 = (-lambda_{anchor,1}^(q-1))^mu0 into mu_{anchor,1}"""
    mu = list(t.mu)
    row = mu[anchor]
    mu[anchor] = (row[0] - (spec.q - 1) * t.mu0,) + tuple(row[1:])
    return ExponentTuple(0, tuple(mu))


def enumerate_squarefree_basis(spec: ModulusSpec, anchor: int = 0) -> List[ExponentTuple]:
    """0 <= mu_j <= q-2, sum mu_j - (q-1) mu0 >= q"""
    if not spec.is_squarefree():
        raise InvalidInput(f"modulus {spec} is not square-free")
    WindowPolicy.default(spec, anchor)
    q, r = spec.q, spec.num_primes
    found = []
    for mu0 in range(mu0_bound(spec) + 1):
        for mu in product(range(q - 1), repeat=r):
            if sum(mu) - (q - 1) * mu0 >= q:
                found.append(ExponentTuple(mu0, tuple((v,) for v in mu)))
    found.sort()
    return found


# ----------------------------------------------------------------------------
# Generating-function count
# ----------------------------------------------------------------------------

def _box_coefficient(q: int, n: int, d: int) -> int:
    """[x^d] (1 - x^q)^(n-1) / (1 - x)^n"""
    return sum((-1) ** l * comb(n - 1, l) * comb(n - 1 + d - q * l, n - 1)
               for l in range(n) if d - q * l >= 0)


def local_series(spec: ModulusSpec, j: int, anchor: Optional[int] = None) -> CountSeries:
    """a_m for prime j, read off x^(-(nq-(n+1))) (1 - x^(q-1)) (1 - x^q)^(n-1) / (1 - x)^n;
    the anchor's series also runs over mu0 with m shifted by (q-1) mu0"""
    q = spec.q
    n = spec.multiplicities[j]
    hi = n * q - (n + 1)
    top = (q - 2) + (n - 1) * (q - 1)
    mu0_range = range(mu0_bound(spec) + 1) if j == anchor else range(1)
    series = CountSeries(j)
    for d in range(top + 1):
        c = _box_coefficient(q, n, d)
        if d >= q - 1:
            c -= _box_coefficient(q, n, d - (q - 1))
        if c < 0:
            raise InternalInvariant(f"negative coefficient {c} at x^{d} for prime {j + 1} of {spec}")
        if c:
            for mu0 in mu0_range:
                series.add(d - hi + (q - 1) * mu0, c)

    expected = (q - 1) * q ** (n - 1) * len(mu0_range)
    if series.total() != expected:
        raise InternalInvariant(f"series of prime {j + 1} of {spec} counts {series.total()} choices, "
                                f"expected {expected}")
    return series


def nu(series: CountSeries, k: int, q: int) -> int:
    """nu_k = sum_{m <= k - q} a_m"""
    return sum(c for m, c in series.coeffs.items() if m <= k - q)


def count_via_series(spec: ModulusSpec, anchor: int = 0) -> int:
    """Basis cardinality from the per-prime series alone, without enumeration"""
    WindowPolicy.default(spec, anchor)
    q = spec.q
    order = [anchor] + [j for j in range(spec.num_primes) if j != anchor]

    first = local_series(spec, anchor, anchor)
    phi = {-m: c for m, c in first.coeffs.items()}
    if len(order) == 1:
        return sum(c for k, c in phi.items() if k >= q)

    for j in order[1:-1]:
        a = local_series(spec, j)
        nxt: Dict[int, int] = {}
        for k_old, c_old in phi.items():
            for l, c in a.coeffs.items():
                nxt[k_old - l] = nxt.get(k_old - l, 0) + c * c_old
        phi = nxt

    last = local_series(spec, order[-1])
    return sum(c * nu(last, k, q) for k, c in phi.items())


# ----------------------------------------------------------------------------
# Records
# ----------------------------------------------------------------------------

def basis_record(t: ExponentTuple, spec: ModulusSpec, anchor: int = 0) -> dict:
    report = mono_valuations(t.to_monomial(spec, anchor), spec)
    return {
        "mu0": t.mu0,
        "mu": t.mu_json(),
        "val_finite": list(report.finite),
        "inf_bound": report.infinity_bound,
    }


def basis_records(basis: Sequence[ExponentTuple], spec: ModulusSpec, anchor: int = 0) -> List[dict]:
    return [basis_record(t, spec, anchor) for t in basis]
