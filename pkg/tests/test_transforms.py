from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freebool import transforms as tf
from freebool.gaussian import GaussianRational
from freebool.series import NcSeries, PowerSeries
from freebool.words import words_up_to
from strategies import measures, nc_series, power_series, small_pos

CATALAN = [1, 2, 5, 14, 42, 132, 429]


def test_eta_single_letter():
    m = NcSeries(3, {"1": Fraction(3)})
    eta = tf.eta_from_moments(m)
    assert (eta["1"], eta["11"], eta["111"]) == (3, -9, 27)
    assert tf.eta_from_moments(NcSeries.zero(3)).is_zero()
    assert tf.r_from_moments(NcSeries.zero(3)).is_zero()


@given(nc_series(4))
def test_eta_oracle_and_roundtrip(m):
    eta = tf.eta_from_moments(m)
    assert all(tf.eta_coeff_oracle(m, w) == eta[w] for w in words_up_to(4))
    assert tf.eta_coeff_oracle(m, "1") == m["1"]
    assert tf.moments_from_eta(eta) == m


@given(nc_series(4))
def test_r_three_routes(m):
    r = tf.r_from_moments(m)
    assert tf.r_from_moments_oracle(m) == r
    assert tf.r_from_moments_functional(m) == r
    assert tf.moments_from_r(r) == m
    assert tf.moments_from_r_oracle(r) == m


def test_dirac_one_variable():
    m = tf.AtomicMeasure.dirac(1).moment_series(5)
    assert tf.eta_from_moments1(m) == PowerSeries.z(5)
    pi1 = tf.moments_from_r1(PowerSeries([1] * 5, 5))
    assert pi1.coefficients() == CATALAN[:5]
    assert tf.one_var_transforms(PowerSeries([], 3)) == (PowerSeries([], 3), PowerSeries([], 3))


@given(power_series(6))
def test_one_variable_oracles(m):
    r = tf.r_from_moments1(m)
    assert [tf.moment_coeff_from_r_oracle1(r, k) for k in range(1, 7)] == m.coefficients()
    eta = tf.eta_from_moments1(m)
    assert [tf.eta_coeff_oracle1(m, k) for k in range(1, 7)] == eta.coefficients()
    assert tf.moments_from_r1(r) == m and tf.moments_from_eta1(eta) == m


def test_measure_moments():
    halves = tf.AtomicMeasure(((0, Fraction(1, 2)), (2, Fraction(1, 2))))
    assert tf.measure_moments(halves, 3) == 4
    assert tf.measure_moments(tf.AtomicMeasure.dirac(1), 7) == 1
    with pytest.raises(ValueError):
        tf.AtomicMeasure(((0, Fraction(1, 2)),))


def test_bbp_of_zero_eta_is_trivial():
    assert tf.bbp(NcSeries.zero(4)).is_zero()


def test_bbp_halves_is_catalan():
    halves = tf.AtomicMeasure(((0, Fraction(1, 2)), (2, Fraction(1, 2)))).moment_series(6)
    assert tf.bbp1(halves).coefficients() == CATALAN[:6]
    assert tf.bbp1_via_powers(halves) == tf.bbp1(halves)


@given(measures(), measures())
def test_free_convolution_adds_cumulants(s1, s2):
    a, b = s1.moment_series(5), s2.moment_series(5)
    c = tf.free_convolve(a, b)
    assert tf.r_from_moments1(c) == tf.r_from_moments1(a) + tf.r_from_moments1(b)
    assert tf.free_convolve(a, b) == tf.free_convolve(b, a)


@given(measures(), small_pos, small_pos)
def test_powers_compose(sigma, s, t):
    m = sigma.moment_series(4)
    for kind in ("free", "boolean"):
        twice = tf.convolution_power(tf.convolution_power(m, s, kind), t, kind)
        assert twice == tf.convolution_power(m, s * t, kind)
    assert tf.convolution_power(m, 2, "free") == tf.free_convolve(m, m)
    assert tf.convolution_power(m, 2, "boolean") == tf.boolean_convolve(m, m)


def test_power_needs_positive_t():
    with pytest.raises(ValueError):
        tf.convolution_power(PowerSeries([1], 2), 0)


def test_s_transform_examples():
    pi1 = tf.moments_from_r1(PowerSeries([1] * 5, 5))
    assert tf.s_transform(pi1).c == (1, -1, 1, -1, 1)
    assert tf.s_transform(tf.AtomicMeasure.dirac(3).moment_series(4)).c == (Fraction(1, 3),) * 1 + (0,) * 3
    with pytest.raises(ValueError, match="zero mean"):
        tf.s_transform(PowerSeries([0, 1], 3))


@given(measures(positive_mean=True), measures(positive_mean=True))
def test_mult_convolution_two_routes(s1, s2):
    a, b = s1.moment_series(5), s2.moment_series(5)
    via_s = tf.free_mult_convolve(a, b, "s")
    assert via_s == tf.free_mult_convolve(a, b, "oracle")
    assert tf.moments_from_s(tf.s_transform(a)) == a


def test_decomplexify_letter():
    z = NcSeries.monomial("1", 1, 2)
    g = tf.decomplexify(z)
    assert g.alphabet == "12"
    assert g["1"] == Fraction(1, 2)
    assert g["2"] == GaussianRational(0, Fraction(-1, 2))
    assert tf.decomplexify(NcSeries.zero(2)).is_zero()


@given(nc_series(3))
def test_change_of_variables_roundtrip(m):
    assert tf.complexify(tf.decomplexify(m)) == m
    assert tf.decomplexify(tf.r_from_moments(m)) == tf.r_from_moments(tf.decomplexify(m))


def test_e_plus_examples():
    assert tf.in_E_plus_truncated(PowerSeries([2], 4)).ok
    v = tf.in_E_plus_truncated(PowerSeries([-1], 4))
    assert not v.ok and "-1" in v.reason
    v = tf.in_E_plus_truncated(PowerSeries([1, 1], 3))
    assert not v.ok and v.witness[1] == "-1"
    assert not tf.in_E_plus_truncated(PowerSeries([GaussianRational(1, 1)], 2)).ok


@given(measures(), st.integers(1, 7))
def test_measures_pass_stieltjes(sigma, n):
    assert tf.stieltjes_truncated(sigma.moment_series(n)).ok
    assert tf.in_E_plus_truncated(tf.eta_of_measure(sigma, n)).ok


@given(measures(), small_pos, st.integers(1, 6))
def test_free_poisson_infinitely_divisible(sigma, rate, n):
    # compound free Poisson: R-transform is rate times the moment series
    r = sigma.moment_series(n) * rate
    assert tf.free_infdiv_truncated(r).ok


def test_cumulants_not_infdiv():
    v = tf.free_infdiv_truncated(PowerSeries([1, -1], 2))
    assert not v.ok


def test_free_poisson_params():
    fp = tf.FreePoissonParams(1, 1)
    assert fp.moment_series(5).coefficients() == CATALAN[:5]
    with pytest.raises(ValueError):
        tf.FreePoissonParams(0, 1)
