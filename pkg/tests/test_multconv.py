from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freebool import diagonal as dg
from freebool import multconv as mc
from freebool import transforms as tf
from freebool.partitions import catalan
from freebool.series import PowerSeries
from strategies import measures, pairs, small_pos

HALF = Fraction(1, 2)


def test_split_pair_counts():
    # split pairs of 2n points are in bijection with NC(2n) split by parity
    for n, count in [(1, 1), (2, 3), (3, 12), (4, 55)]:
        got = list(mc.enumerate_split_pairs(n))
        assert len(got) == count
        assert all(p.union().is_noncrossing() for p in got)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rotation_is_a_bijection(n):
    pairs_ = list(mc.enumerate_split_pairs(n))
    assert {mc.rotate_split_pair(p) for p in pairs_} == set(pairs_)


@given(pairs(4, nonzero_first=True), pairs(4, nonzero_first=True))
def test_three_routes_agree(d, dp):
    oracle = mc.boxtimes_determining_oracle(d, dp, 4)
    assert mc.boxtimes_determining_fast(d, dp, 4) == oracle
    assert mc.boxtimes_determining_subordination(d, dp, 4) == oracle
    assert oracle.alpha[0] == d.alpha[0] * dp.alpha[0]


@given(pairs(4), pairs(4))
def test_degenerate_branches(d, dp):
    zero_beta = dg.DeterminingPair(d.alpha, (0,) * 4)
    oracle = mc.boxtimes_determining_oracle(zero_beta, dp, 4)
    assert oracle.alpha == tuple(d.alpha[k] * dp.alpha[0] ** (k + 1) for k in range(4))
    assert mc.boxtimes_determining_fast(zero_beta, dp, 4) == oracle
    zero_alpha = dg.DeterminingPair((0,) * 4, dp.beta)
    assert mc.boxtimes_determining_fast(d, zero_alpha, 4) == mc.boxtimes_determining_oracle(d, zero_alpha, 4)


def test_composition_unavailable():
    d = dg.DeterminingPair((1, 1), (0, 1))
    dp = dg.DeterminingPair((1, 1), (1, 1))
    with pytest.raises(mc.CompositionUnavailable):
        mc.boxtimes_determining_fast(d, dp, 2)
    pair, method = mc.boxtimes_determining(d, dp, 2)
    assert pair == mc.boxtimes_determining_oracle(d, dp, 2)
    assert method == "partition-sum"


def test_trivial_factor_gives_zero():
    nu = dg.psi(tf.AtomicMeasure.dirac(2), tf.AtomicMeasure.dirac(1), 4).pair
    pair, _ = mc.boxtimes_determining(nu, dg.DeterminingPair.zero(4), 4)
    assert pair.is_zero
    assert dg.is_infdiv_r_diagonal(pair).ok


def test_psi_product_passes():
    halves = tf.AtomicMeasure(((0, HALF), (2, HALF)))
    one = tf.AtomicMeasure.dirac(1)
    pair, _ = mc.boxtimes_determining(dg.psi(halves, one, 6).pair, dg.psi(one, one, 6).pair, 6)
    assert dg.is_infdiv_r_diagonal(pair).ok


@given(small_pos, small_pos)
def test_kms_parameters_multiply(t, s):
    lam, mu = mc.lambda_circular_pair(t, 4), mc.lambda_circular_pair(s, 4)
    pair, _ = mc.boxtimes_determining(lam, mu, 4)
    assert mc.kms_parameter(pair) == t * s
    assert dg.is_infdiv_r_diagonal(pair).ok


def test_mixed_moment_examples():
    ka = PowerSeries([2, 3, 1], 3)
    kb = PowerSeries([5, 7, 1], 3)
    ma, mb = tf.moments_from_r1(ka), tf.moments_from_r1(kb)
    from freebool.opmodel import free_mixed_moment

    assert free_mixed_moment(ka, kb, "ab") == 10
    want = ma[2] * mb[1] ** 2 + ma[1] ** 2 * mb[2] - ma[1] ** 2 * mb[1] ** 2
    assert free_mixed_moment(ka, kb, "abab") == want


def test_lambda_circular_sigma():
    lam = Fraction(2)
    assert mc.lambda_circular_sigma(lam, 1, 5) == tf.AtomicMeasure.dirac(1).moment_series(5)
    tau1 = mc.lambda_tau(lam, 1)
    assert tau1.atoms == ((0, Fraction(2, 3)), (3, Fraction(1, 3)))
    assert mc.lambda_circular_sigma(lam, 2, 5) == tau1.moment_series(5)


@pytest.mark.parametrize("lam", [HALF, Fraction(2)])
def test_power_equals_psi(lam):
    for k in (1, 2, 3):
        assert mc.lambda_circular_power(lam, k, 5) == mc.lambda_circular_psi_pair(lam, k, 5)
