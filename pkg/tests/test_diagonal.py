from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freebool import diagonal as dg
from freebool import transforms as tf
from freebool.series import NcSeries, PowerSeries
from freebool.words import words_up_to
from strategies import measures, pairs, small, small_pos

HALF = Fraction(1, 2)


def test_zero_pair_gives_trivial_law():
    mu = dg.make_eta_diagonal(dg.DeterminingPair.zero(4), 8)
    assert mu.moments.is_zero()
    assert mu.moment("") == 1
    assert dg.make_r_diagonal(dg.DeterminingPair.zero(4), 8).moments.is_zero()


@given(pairs(4))
def test_eta_diagonal_satisfies_rules(pair):
    mu = dg.make_eta_diagonal(pair, 8)
    assert dg.check_eta_diagonal_moments(mu).ok
    assert dg.is_diagonal_series(tf.eta_from_moments(mu.moments))


def test_planted_violations_have_witnesses():
    v = dg.check_eta_diagonal_moments(NcSeries(4, {"11": 1}))
    assert not v.ok and v.witness == "11"
    a, b = Fraction(2), Fraction(3)
    m = dg.eta_diagonal_from_moment_rules([(a, b), (a, b)], 4).moments
    coeffs = dict(m.coeffs)
    coeffs["1**1"] = a * b + 1
    v = dg.check_eta_diagonal_moments(NcSeries(4, coeffs))
    assert not v.ok and v.witness == "1**1"


@given(pairs(4))
def test_product_eta_recovers_pair(pair):
    mu = dg.make_eta_diagonal(pair, 8)
    zz, zsz = dg.product_eta(mu)
    assert zz == pair.f and zsz == pair.g
    assert tuple(dg.product_eta(mu, oracle=True)) == (zz, zsz)


def test_product_eta_zero_pair():
    mu = dg.make_eta_diagonal(dg.DeterminingPair.zero(3), 6)
    assert [s.coefficients() for s in dg.product_eta(mu)] == [[0] * 3, [0] * 3]


@given(pairs(5))
def test_product_r_two_methods(pair):
    p = dg.product_r(pair, 5)
    assert p.method == "partition-sum+composition"
    a, b = pair.alpha, pair.beta
    assert p.zz[1] == a[0]
    assert p.zz[2] == a[1] + a[0] * b[0]
    assert p.zz[3] == a[2] + 2 * a[1] * b[0] + a[0] * b[1] + a[0] * b[0] ** 2
    assert dg.pair_from_product_r(*p) == pair


def test_product_r_past_cap_uses_composition_only():
    pair = dg.DeterminingPair((1,) * 3, (1,) * 3)
    p = dg.product_r(pair, 3, cap=2)
    assert "cap" in p.method
    assert p.zz.coefficients() == [1, 2, 5]


@given(pairs(3))
def test_r_diagonal_product_moments(pair):
    nu = dg.make_r_diagonal(pair, 6)
    comp = dg.product_r_composition(pair, 3)
    assert tf.r_from_moments1(dg.alternating_moments(nu, "1")) == comp.zz
    assert tf.r_from_moments1(dg.alternating_moments(nu, "*")) == comp.zsz


def test_lambda_circular_kms():
    lam = HALF
    nu = dg.make_r_diagonal(dg.DeterminingPair((lam, 0, 0, 0), (1, 0, 0, 0)), 8)
    assert dg.kms_check(nu, lam)
    assert dg.kms_defects(nu, lam, 8) == []
    zz, zsz = dg.product_r(nu, 4)
    assert zz.coefficients() == [HALF] * 4
    assert zsz.coefficients() == [1, HALF, HALF**2, HALF**3]


@given(st.lists(small, min_size=3, max_size=3))
def test_tracial_case(beta):
    nu = dg.make_r_diagonal(dg.DeterminingPair(tuple(beta), tuple(beta)), 6)
    assert dg.kms_defects(nu, 1, 6) == []


@given(st.lists(small, min_size=4, max_size=4), small_pos)
def test_alpha_forced_by_defects(beta, t):
    assert dg.alpha_from_kms_instances(tuple(beta), t) == tuple(t * b for b in beta)


def test_kms_needs_positive_t():
    with pytest.raises(ValueError):
        dg.kms_check(dg.DeterminingPair.zero(2), 0)


def test_infdiv_examples():
    lam = dg.DeterminingPair((Fraction(3), 0, 0), (1, 0, 0))
    assert dg.is_infdiv_r_diagonal(lam).ok
    bad = dg.is_infdiv_r_diagonal(dg.DeterminingPair((1, 1, 0), (1, 0, 0)))
    assert not bad.ok and bad.side == "alpha"


@given(measures(), measures())
def test_psi_pipeline(s1, s2):
    nu = dg.psi(s1, s2, 5)
    assert dg.is_infdiv_r_diagonal(nu).ok
    assert nu.pair.f == tf.eta_of_measure(s1, 5)
    assert tuple(dg.bbp_product_transforms(s1, s2, 5)) == tuple(dg.product_r(nu, 5))
    mu = dg.phi(s1, s2, 6)
    assert dg.check_eta_diagonal_moments(mu).ok
    assert dg.product_moments(mu).zz.coefficients()[:3] == [s1.moment(k) for k in range(1, 4)]


def test_psi_rejects_negative_atoms():
    with pytest.raises(ValueError, match="P\\+_c"):
        dg.psi(tf.AtomicMeasure(((-1, 1),)), tf.AtomicMeasure.dirac(1), 4)


@given(measures(positive_mean=True), st.sampled_from([Fraction(1), Fraction(2), HALF]))
def test_kms_tau_matches_psi(sigma, t):
    assert tuple(dg.kms_tau(sigma, t, 5)) == tuple(dg.kms_psi_products(sigma, t, 5))


def test_pair_json_roundtrip():
    p = dg.DeterminingPair((HALF, 1), (0, -3))
    assert dg.DeterminingPair.from_json(p.to_json()) == p
