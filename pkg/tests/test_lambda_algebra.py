from itertools import product

import pytest

from algebra.field import field_for_order
from algebra.modulus import moduli_up_to
from services.differentials import certified_holomorphic, enumerate_basis, mono_valuations
from services.lambda_algebra import (
    LambdaMonomial,
    LambdaSum,
    WindowPolicy,
    canonicalize,
    mono_mul,
    rewrite_once,
)
from services.oracle import oracle_build, oracle_embed
from utils.errors import DTSquared, InvalidInput, NegativePower, NotReducible


def lam(spec, i, k, e=1):
    return LambdaMonomial.generator(spec, i, k, e)


def test_mono_mul(make_spec):
    spec = make_spec(3, '0^2')
    F = spec.field
    assert mono_mul(lam(spec, 0, 2), lam(spec, 0, 2), F) == lam(spec, 0, 2, 2)

    a = lam(spec, 0, 1, -3).with_dT().scaled(2, F)
    assert mono_mul(a, lam(spec, 0, 1), F) == lam(spec, 0, 1, -2).with_dT().scaled(2, F)

    dT = LambdaMonomial.unit(spec, has_dT=True)
    with pytest.raises(DTSquared):
        mono_mul(dT, dT, F)


def test_rewrite_once_examples(make_spec):
    spec = make_spec(3, '0^2')
    F = spec.field
    l11, l12 = lam(spec, 0, 1), lam(spec, 0, 2)

    expected = LambdaSum.of(F, l11, mono_mul(lam(spec, 0, 1, 2), l12, F))
    assert rewrite_once(lam(spec, 0, 2, 3), 0, 2, spec) == expected

    expected = LambdaSum.of(F, mono_mul(l11, l12, F), mono_mul(lam(spec, 0, 1, 2), lam(spec, 0, 2, 2), F))
    assert rewrite_once(lam(spec, 0, 2, 4), 0, 2, spec) == expected


def test_rewrite_needs_enough_exponent(make_spec):
    spec = make_spec(3, '0^2')
    with pytest.raises(NotReducible):
        rewrite_once(lam(spec, 0, 2, 2), 0, 2, spec)
    with pytest.raises(NotReducible):
        rewrite_once(lam(spec, 0, 1, 5), 0, 1, spec)


def test_rewrite_at_level_three_lowers_the_next_level(make_spec):
    spec = make_spec(3, '0^3')
    out = rewrite_once(lam(spec, 0, 3, 3), 0, 3, spec)
    assert set(out.terms) == {lam(spec, 0, 2).key, mono_mul(lam(spec, 0, 1, 2), lam(spec, 0, 3), spec.field).key}


def test_default_windows(make_spec):
    spec = make_spec(3, '0^2,1^1')
    policy = WindowPolicy.default(spec, 0)
    assert policy.windows == ((2, 3), (0, 1))
    with pytest.raises(InvalidInput):
        WindowPolicy.default(spec, 2)
    with pytest.raises(InvalidInput):
        WindowPolicy(0, ((0, 3), (0, 1))).check(spec)


def test_canonicalize_window_exchange(make_spec):
    spec = make_spec(3, '0^3')
    F = spec.field
    policy = WindowPolicy.default(spec, 0)
    assert policy.windows == ((4, 5),)
    s = LambdaSum.of(F, lam(spec, 0, 1, -3).with_dT())
    expected = LambdaSum.of(F, lam(spec, 0, 1, -5).with_dT().with_prime_power(0, 1).scaled(2, F))
    assert canonicalize(s, policy, spec) == expected


def test_canonicalize_rewrite_then_merge(make_spec):
    spec = make_spec(3, '0^2')
    F = spec.field
    policy = WindowPolicy.default(spec, 0)
    s = LambdaSum.of(F, mono_mul(lam(spec, 0, 2, 3), lam(spec, 0, 1, -4), F).with_dT())
    expected = LambdaSum.of(F, lam(spec, 0, 1, -3).with_dT(),
                            mono_mul(lam(spec, 0, 1, -2), lam(spec, 0, 2), F).with_dT())
    assert canonicalize(s, policy, spec) == expected


def test_canonical_term_is_a_fixed_point(make_spec):
    spec = make_spec(3, '0^2')
    policy = WindowPolicy.default(spec, 0)
    s = LambdaSum.of(spec.field, lam(spec, 0, 1, -3).with_dT())
    assert canonicalize(s, policy, spec) == s


def test_negative_power_signals_a_window_mismatch(make_spec):
    spec = make_spec(3, '0^1')
    policy = WindowPolicy.default(spec, 0)
    with pytest.raises(NegativePower):
        canonicalize(LambdaSum.of(spec.field, lam(spec, 0, 1, -4)), policy, spec)


def test_non_anchor_prime_powers_move_to_the_anchor(make_spec):
    spec = make_spec(3, '0^1,1^1')
    F = spec.field
    policy = WindowPolicy.default(spec, 0)
    # P_2 = P_1 - 1 = P_1 + 2
    s = LambdaSum.of(F, LambdaMonomial.unit(spec).with_prime_power(1, 1))
    expected = LambdaSum.of(F, LambdaMonomial.unit(spec).with_prime_power(0, 1),
                            LambdaMonomial.unit(spec, scalar=2))
    assert canonicalize(s, policy, spec) == expected


@pytest.mark.parametrize('literal', ['0^2', '0^3', '0^1,1^1', '0^2,1^1'])
def test_canonicalize_preserves_value(make_spec, literal):
    spec = make_spec(3, literal)
    ring = oracle_build(spec)
    q = spec.q
    level_one = (-(q + 1), -1, 0, 2)
    upper = (0, 1, q, q + 1, 2 * q)
    per_prime = [list(product(level_one, *([upper] * (n - 1)))) for n in spec.multiplicities]
    policies = [WindowPolicy.default(spec, a) for a in range(spec.num_primes)]
    for rows in product(*per_prime):
        m = LambdaMonomial(1, (0,) * spec.num_primes, tuple(rows), True)
        s = LambdaSum.of(spec.field, m)
        value = oracle_embed(s, ring)
        for policy in policies:
            try:
                canonical = canonicalize(s, policy, spec)
            except NegativePower:
                continue
            assert oracle_embed(canonical, ring) == value, str(m)


def test_rewrite_preserves_holomorphy(make_spec):
    spec = make_spec(3, '0^3')
    q = spec.q
    for mu0, e1, e2, e3 in product(range(3), range(-8, 1), range(7), range(7)):
        m = LambdaMonomial(1, (mu0,), ((e1, e2, e3),), True)
        if not certified_holomorphic(m, spec):
            continue
        before = mono_valuations(m, spec)
        for k in (3, 2):
            if m.exponent(0, k) < q:
                continue
            b_term, c_term = None, None
            for term in rewrite_once(m, 0, k, spec).monomials():
                assert certified_holomorphic(term, spec)
                if term.exponent(0, k) == m.exponent(0, k) - q:
                    b_term = term
                else:
                    c_term = term
            assert mono_valuations(b_term, spec).infinity_bound == before.infinity_bound + q - 1
            assert mono_valuations(c_term, spec).infinity_bound == before.infinity_bound


def _raised_basis_monomials(spec, i, k):
    """Basis monomials with lambda_{i,k} raised by q, alone and traded against lambda_{i,1}"""
    q = spec.q
    for anchor in range(spec.num_primes):
        for t in enumerate_basis(spec, anchor, max_genus=1000):
            m = t.to_monomial(spec, anchor)
            raised = m.with_exponent(i, k, m.exponent(i, k) + q)
            yield raised
            yield raised.with_exponent(i, 1, raised.exponent(i, 1) - q)


@pytest.mark.parametrize('q', [3, 4, 5])
def test_rewrite_preserves_holomorphy_on_small_moduli(q):
    checked = 0
    for spec in moduli_up_to(field_for_order(q), 4):
        for i, n in enumerate(spec.multiplicities):
            for k in range(2, n + 1):
                for m in _raised_basis_monomials(spec, i, k):
                    if not certified_holomorphic(m, spec):
                        continue
                    before = mono_valuations(m, spec).infinity_bound
                    bounds = {}
                    for term in rewrite_once(m, i, k, spec).monomials():
                        assert certified_holomorphic(term, spec), (spec.label(), str(m))
                        bounds[m.exponent(i, k) - term.exponent(i, k)] = mono_valuations(term, spec).infinity_bound
                    # lambda_{i,k-1} term gains q-1 at infinity, lambda_{i,1}^(q-1) term keeps the bound
                    assert bounds == {q: before + q - 1, q - 1: before}, (spec.label(), str(m))
                    checked += 1
    assert checked
