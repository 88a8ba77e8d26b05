"""Eta-diagonal and R-diagonal *-distributions.

A diagonal law is fixed by its determining sequences ``alpha``, ``beta``:
the coefficients of ``(zz*)^n`` and ``(z*z)^n`` in its eta-series (eta-
diagonal) or R-transform (R-diagonal), all other coefficients being zero.
This module builds such laws, tests the moment characterization of eta-
diagonality, computes the laws of ``ZZ*`` and ``Z*Z``, the measure
parametrizations ``phi`` and ``psi``, and the KMS identities.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction

from .gaussian import coeff, is_real
from .partitions import ORACLE_CAP, OracleCapExceeded, _check_n, noncrossing_blocks
from .series import NcSeries, PowerSeries, ps_compose, ps_product
from .transforms import (
    AtomicMeasure,
    StarDistribution,
    as_moment_series,
    bbp1,
    convolution_power,
    eta_coeff_oracle1,
    eta_from_moments1,
    free_mult_convolve,
    in_E_plus_truncated,
    moment_coeff_from_r_oracle,
    moments_from_eta,
    moments_from_eta1,
    moments_from_r,
    moments_from_r1,
    r_from_moments1,
)
from .verdict import Verdict
from .words import alternating, canonical_factorization, classify_word, count_letters, words_up_to


@dataclass(frozen=True)
class DeterminingPair:
    """Sequences ``alpha_1..alpha_N`` and ``beta_1..beta_N``."""

    alpha: tuple
    beta: tuple

    def __post_init__(self):
        a = tuple(coeff(x) for x in self.alpha)
        b = tuple(coeff(x) for x in self.beta)
        if len(a) != len(b):
            raise ValueError(f"alpha and beta lengths differ: {len(a)} vs {len(b)}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    def __len__(self):
        return len(self.alpha)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n, (0,) * n)

    @classmethod
    def from_series(cls, f: PowerSeries, g: PowerSeries):
        if f.order != g.order:
            raise ValueError("series orders differ")
        return cls(tuple(f.coefficients()), tuple(g.coefficients()))

    def truncate(self, n):
        if n > len(self):
            raise ValueError(f"pair has length {len(self)} < {n}")
        return DeterminingPair(self.alpha[:n], self.beta[:n])

    @property
    def f(self) -> PowerSeries:
        """``sum alpha_n z^n``."""
        return PowerSeries(self.alpha)

    @property
    def g(self) -> PowerSeries:
        """``sum beta_n z^n``."""
        return PowerSeries(self.beta)

    @property
    def is_zero(self):
        return not any(self.alpha) and not any(self.beta)

    def to_json(self):
        from .gaussian import to_json

        def enc(x):
            return str(x) if is_real(x) else to_json(x)

        return {"alpha": [enc(x) for x in self.alpha], "beta": [enc(x) for x in self.beta]}

    @classmethod
    def from_json(cls, obj):
        from .gaussian import from_json

        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(tuple(from_json(x) for x in obj["alpha"]), tuple(from_json(x) for x in obj["beta"]))


def diagonal_series(pair: DeterminingPair, order: int) -> NcSeries:
    """``sum alpha_n (zz*)^n + sum beta_n (z*z)^n`` truncated at word length ``order``."""
    coeffs = {}
    for n in range(1, order // 2 + 1):
        if n > len(pair):
            raise ValueError(f"determining pair too short for order {order}")
        coeffs[alternating(n, "1")] = pair.alpha[n - 1]
        coeffs[alternating(n, "*")] = pair.beta[n - 1]
    return NcSeries(order, coeffs)


@dataclass(frozen=True, eq=False)
class DiagonalDistribution:
    """A diagonal law: ``kind`` is ``"eta"`` or ``"r"``; moments are built lazily up to ``order``."""

    pair: DeterminingPair
    kind: str
    order: int
    positivity_witness: bool = False

    def __post_init__(self):
        if self.kind not in ("eta", "r"):
            raise ValueError(f"kind must be 'eta' or 'r', got {self.kind!r}")
        if len(self.pair) < self.order // 2:
            raise ValueError(f"determining pair too short for order {self.order}")

    @functools.cached_property
    def transform(self) -> NcSeries:
        return diagonal_series(self.pair, self.order)

    @functools.cached_property
    def moments(self) -> NcSeries:
        if self.kind == "eta":
            return moments_from_eta(self.transform)
        return moments_from_r(self.transform)

    @property
    def distribution(self) -> StarDistribution:
        return StarDistribution(self.moments)

    def moment(self, w: str):
        return Fraction(1) if w == "" else self.moments[w]


def make_eta_diagonal(pair: DeterminingPair, order: int) -> DiagonalDistribution:
    return DiagonalDistribution(pair, "eta", order)


def make_r_diagonal(pair: DeterminingPair, order: int) -> DiagonalDistribution:
    return DiagonalDistribution(pair, "r", order)


def _moment_series_of(mu) -> NcSeries:
    if isinstance(mu, NcSeries):
        return mu
    return mu.moments


# --------------------------------------------------------------------------
# moment characterization of eta-diagonality


def check_eta_diagonal_moments(mu) -> Verdict:
    """Check that non-mixed-alternating words have zero moment and mixed-alternating
    words factor over their canonical factorization; report the first bad word."""
    m = _moment_series_of(mu)
    for w in words_up_to(m.order):
        cls = classify_word(w)
        if not cls.is_mixed_alternating:
            if m[w]:
                return Verdict.failed(m.order, f"moment of non-mixed-alternating word {w} is {m[w]}", witness=w)
        elif not cls.is_alternating:
            prod = Fraction(1)
            for f in canonical_factorization(w):
                prod = prod * m[f]
            if m[w] != prod:
                return Verdict.failed(m.order, f"moment of {w} is {m[w]}, factor product is {prod}", witness=w)
    return Verdict.passed(m.order)


def eta_diagonal_from_moment_rules(alt_moments, order: int) -> StarDistribution:
    """Moments set by the two rules, from chosen values of the alternating moments.

    ``alt_moments[n-1] = (mu((ZZ*)^n), mu((Z*Z)^n))``.
    """
    vals = {}
    for n, (a, b) in enumerate(alt_moments, start=1):
        vals[alternating(n, "1")] = coeff(a)
        vals[alternating(n, "*")] = coeff(b)
    out = {}
    for w in words_up_to(order):
        cls = classify_word(w)
        if cls.is_alternating:
            if w not in vals:
                raise ValueError(f"missing alternating moment for {w}")
            out[w] = vals[w]
        elif cls.is_mixed_alternating:
            prod = Fraction(1)
            for f in canonical_factorization(w):
                prod = prod * vals[f]
            out[w] = prod
    return StarDistribution(NcSeries(order, out))


def is_diagonal_series(f: NcSeries) -> bool:
    """Only alternating words carry nonzero coefficients."""
    return all(classify_word(w).is_alternating for w in f.coeffs)


# --------------------------------------------------------------------------
# laws of ZZ* and Z*Z


@dataclass(frozen=True)
class ProductTransforms:
    """Transforms of ``ZZ*`` and ``Z*Z``; unpacks as ``(zz, zsz)``."""

    zz: PowerSeries
    zsz: PowerSeries
    method: str

    def __iter__(self):
        return iter((self.zz, self.zsz))

    def to_json(self):
        return {"zz": self.zz.to_json(), "zsz": self.zsz.to_json(), "method": self.method}


def alternating_moments(mu, first: str = "1") -> PowerSeries:
    """``mu((ZZ*)^n)`` (or ``(Z*Z)^n``) for ``2n <= order``."""
    m = _moment_series_of(mu)
    n = m.order // 2
    return PowerSeries([m[alternating(k, first)] for k in range(1, n + 1)], n)


def product_eta(mu, oracle: bool = False) -> ProductTransforms:
    """Eta-series of ``ZZ*`` and ``Z*Z`` from the alternating moments of an eta-diagonal law."""
    verdict = check_eta_diagonal_moments(mu)
    if not verdict:
        raise ValueError(f"not eta-diagonal: {verdict.reason}")
    a, b = alternating_moments(mu, "1"), alternating_moments(mu, "*")
    if oracle:
        n = a.order
        zz = PowerSeries([eta_coeff_oracle1(a, k) for k in range(1, n + 1)], n)
        zsz = PowerSeries([eta_coeff_oracle1(b, k) for k in range(1, n + 1)], n)
        return ProductTransforms(zz, zsz, "interval-partition-sum")
    return ProductTransforms(eta_from_moments1(a), eta_from_moments1(b), "series")


def _first_block_weighted_sum(first, rest, n):
    total = Fraction(0)
    for blocks in noncrossing_blocks(n):
        c = first[len(blocks[0]) - 1]
        for b in blocks[1:]:
            if not c:
                break
            c = c * rest[len(b) - 1]
        total = total + c
    return total


def product_r_partition_sum(pair: DeterminingPair, n: int | None = None, cap: int | None = ORACLE_CAP) -> ProductTransforms:
    """Sum over NC(k) of ``alpha_{|V1|} beta_{|V2|}...`` with ``V1`` the block of 1 (and alpha/beta swapped)."""
    n = len(pair) if n is None else n
    _check_n(n, cap)
    p = pair.truncate(n)
    zz = [_first_block_weighted_sum(p.alpha, p.beta, k) for k in range(1, n + 1)]
    zsz = [_first_block_weighted_sum(p.beta, p.alpha, k) for k in range(1, n + 1)]
    return ProductTransforms(PowerSeries(zz, n), PowerSeries(zsz, n), "partition-sum")


def compose_product_r(r_a: PowerSeries, r_b: PowerSeries) -> PowerSeries:
    """``R_a(z (1 + M_b(z)))`` with ``M_b`` the moments of cumulant series ``r_b``."""
    n = r_a.order
    m_b = moments_from_r1(r_b)
    return ps_compose(r_a, ps_product(PowerSeries.z(n), m_b + 1))


def product_r_composition(pair: DeterminingPair, n: int | None = None) -> ProductTransforms:
    n = len(pair) if n is None else n
    p = pair.truncate(n)
    return ProductTransforms(compose_product_r(p.f, p.g), compose_product_r(p.g, p.f), "composition")


def product_r(nu, n: int | None = None, method: str = "both", cap: int | None = ORACLE_CAP) -> ProductTransforms:
    """R-transforms of ``ZZ*`` and ``Z*Z`` for an R-diagonal law.

    ``nu`` is a :class:`DiagonalDistribution` of kind ``"r"`` or a bare
    :class:`DeterminingPair`.  With ``method="both"`` the partition sum and
    the composition formula are both run and must agree; above the oracle cap
    only the composition runs and the result is labeled accordingly.
    """
    pair = nu.pair if isinstance(nu, DiagonalDistribution) else nu
    if isinstance(nu, DiagonalDistribution) and nu.kind != "r":
        raise ValueError("product_r needs an R-diagonal law")
    n = len(pair) if n is None else n
    if method == "composition":
        return product_r_composition(pair, n)
    if method == "partition-sum":
        return product_r_partition_sum(pair, n, cap)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    comp = product_r_composition(pair, n)
    try:
        part = product_r_partition_sum(pair, n, cap)
    except OracleCapExceeded:
        return ProductTransforms(comp.zz, comp.zsz, "composition (oracle cap exceeded)")
    if tuple(part) != tuple(comp):
        raise ArithmeticError("partition-sum and composition disagree")
    return ProductTransforms(comp.zz, comp.zsz, "partition-sum+composition")


def pair_from_product_r(r_zz: PowerSeries, r_zsz: PowerSeries) -> DeterminingPair:
    """Recover the determining pair from the R-transforms of ``ZZ*`` and ``Z*Z``.

    The n-th coefficients are ``alpha_n``, ``beta_n`` plus terms in lower
    indices only, so the pair is solved one index at a time.
    """
    if r_zz.order != r_zsz.order:
        raise ValueError("series orders differ")
    n = r_zz.order
    alpha = [Fraction(0)] * n
    beta = [Fraction(0)] * n
    for k in range(1, n + 1):
        guess = product_r_composition(DeterminingPair(alpha[:k], beta[:k]), k)
        alpha[k - 1] = r_zz[k] - guess.zz[k]
        beta[k - 1] = r_zsz[k] - guess.zsz[k]
    return DeterminingPair(tuple(alpha), tuple(beta))


# --------------------------------------------------------------------------
# parametrizations by pairs of measures


def _eta_for(sigma, n: int) -> tuple[PowerSeries, bool]:
    """Eta-series of an atomic measure on [0, inf) or of a bare moment series."""
    if isinstance(sigma, AtomicMeasure):
        if not sigma.is_positive:
            raise ValueError("not in P+_c: negative atom position")
        return eta_from_moments1(sigma.moment_series(n)), True
    return eta_from_moments1(as_moment_series(sigma, n)), False


def _pair_for(sigma1, sigma2, order):
    n = max(order, 1)
    f, w1 = _eta_for(sigma1, n)
    g, w2 = _eta_for(sigma2, n)
    return DeterminingPair.from_series(f, g), w1 and w2


def phi(sigma1, sigma2, order: int) -> DiagonalDistribution:
    """Eta-diagonal law whose determining sequences are the eta-series of the two measures.

    Then ``mu((ZZ*)^n)`` and ``mu((Z*Z)^n)`` are the n-th moments of ``sigma1``
    and ``sigma2``.  Moment series are accepted in place of measures but
    carry no positivity witness.
    """
    pair, witnessed = _pair_for(sigma1, sigma2, order)
    return DiagonalDistribution(pair, "eta", order, witnessed)


def psi(sigma1, sigma2, order: int) -> DiagonalDistribution:
    """BBP image of :func:`phi`: the R-diagonal law with the same determining sequences."""
    pair, witnessed = _pair_for(sigma1, sigma2, order)
    return DiagonalDistribution(pair, "r", order, witnessed)


def bbp_product_transforms(sigma1, sigma2, n: int) -> ProductTransforms:
    """``R_{ZZ*} = R_{B(s1)}(z(1 + M_{B(s2)}))`` and symmetrically, via the one-variable BBP map."""
    m1, m2 = as_moment_series(sigma1, n), as_moment_series(sigma2, n)
    b1, b2 = bbp1(m1), bbp1(m2)
    r1, r2 = r_from_moments1(b1), r_from_moments1(b2)
    z = PowerSeries.z(n)
    zz = ps_compose(r1, ps_product(z, b2 + 1))
    zsz = ps_compose(r2, ps_product(z, b1 + 1))
    return ProductTransforms(zz, zsz, "bbp-composition")


def product_moments(nu, n: int | None = None) -> ProductTransforms:
    """Moment series of ``ZZ*`` and ``Z*Z`` for a diagonal law."""
    if nu.kind == "r":
        zz, zsz = product_r(nu, n, method="composition")
        return ProductTransforms(moments_from_r1(zz), moments_from_r1(zsz), "moments")
    p = nu.pair if n is None else nu.pair.truncate(n)
    return ProductTransforms(moments_from_eta1(p.f), moments_from_eta1(p.g), "moments")


# --------------------------------------------------------------------------
# KMS condition


def _check_t(t):
    t = coeff(t)
    if not is_real(t) or t <= 0:
        raise ValueError("KMS parameter must be positive")
    return t


def kms_check(nu, t, n: int | None = None) -> bool:
    """``alpha_k = t beta_k`` for ``k <= n`` (default: the whole pair)."""
    t = _check_t(t)
    pair = nu.pair if isinstance(nu, DiagonalDistribution) else nu
    n = len(pair) if n is None else n
    return all(pair.alpha[k] == t * pair.beta[k] for k in range(n))


def ut_identity_defect(nu, t, v: str, w: str):
    """``mu(Z^v Z^w) - t^{#1(v) - #*(v)} mu(Z^w Z^v)``."""
    t = _check_t(t)
    ones, stars = count_letters(v)
    return nu.moment(v + w) - t ** (ones - stars) * nu.moment(w + v)


def kms_defects(nu, t, max_len: int):
    """Nonzero defects over all word pairs with ``1 <= |v|``, ``0 <= |w|`` and ``|v|+|w| <= max_len``."""
    t = _check_t(t)
    bad = []
    for v in words_up_to(max_len):
        for w in [""] + words_up_to(max_len - len(v)):
            d = ut_identity_defect(nu, t, v, w)
            if d:
                bad.append((v, w, d))
    return bad


def alpha_from_kms_instances(beta, t, cap: int | None = ORACLE_CAP) -> tuple:
    """Solve ``mu((ZZ*)^n) = t mu((Z*Z)^n)`` for ``alpha_n``, one ``n`` at a time.

    Only the full block of ``(ZZ*)^n`` carries ``alpha_n``, so each instance is
    affine in it with slope 1.  Moments come from direct NC-partition sums.
    """
    t = _check_t(t)
    beta = tuple(coeff(b) for b in beta)
    alpha = [Fraction(0)] * len(beta)
    for n in range(1, len(beta) + 1):
        order = 2 * n
        _check_n(order, cap)
        r = diagonal_series(DeterminingPair(tuple(alpha[:n]), beta[:n]), order)
        zz = moment_coeff_from_r_oracle(r, alternating(n, "1"), cap)
        zsz = moment_coeff_from_r_oracle(r, alternating(n, "*"), cap)
        alpha[n - 1] = t * zsz - zz
    return tuple(alpha)


def kms_tau(sigma, t, n: int) -> ProductTransforms:
    """Moment series of ``(B(s) [x] Pi_1)^{[+]t}`` and ``(B(s)^{[+]t} [x] Pi_1)^{[+]1/t}``.

    ``[x]`` is free multiplicative and ``[+]`` free additive convolution.
    """
    t = _check_t(t)
    m = as_moment_series(sigma, n)
    if not m[1]:
        raise ValueError("S-transform undefined at zero mean")
    b = bbp1(m)
    pi1 = moments_from_r1(PowerSeries([1] * n, n))
    tau1 = convolution_power(free_mult_convolve(b, pi1, "s"), t, "free")
    tau2 = convolution_power(free_mult_convolve(convolution_power(b, t, "free"), pi1, "s"), 1 / t, "free")
    return ProductTransforms(tau1, tau2, "s-transform")


def kms_psi_products(sigma, t, n: int) -> ProductTransforms:
    """Moment series of ``ZZ*`` and ``Z*Z`` in ``psi(sigma^{uplus t}, sigma)``."""
    t = _check_t(t)
    m = as_moment_series(sigma, n)
    nu = psi(convolution_power(m, t, "boolean"), m, n)
    return product_moments(nu, n)


# --------------------------------------------------------------------------
# infinite divisibility


def is_infdiv_r_diagonal(nu, n: int | None = None) -> Verdict:
    """Truncated test that both determining series are eta-series of measures on [0, inf)."""
    pair = nu.pair if isinstance(nu, DiagonalDistribution) else nu
    n = len(pair) if n is None else n
    p = pair.truncate(n)
    for side, series in (("alpha", p.f), ("beta", p.g)):
        v = in_E_plus_truncated(series, n)
        if not v:
            return Verdict.failed(n, v.reason, v.witness, side)
    return Verdict.passed(n)
