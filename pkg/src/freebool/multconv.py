"""Free multiplicative convolution of R-diagonal laws via determining pairs.

For R-diagonal ``nu`` (pair ``alpha, beta``) and ``nu'`` (pair ``alpha',
beta'``) the product ``nu [x] nu'`` is R-diagonal with pair
``alpha_hat, beta_hat``.  Three computations are provided:

* :func:`boxtimes_determining_oracle` sums over split non-crossing pairs
  ``(pi, rho)`` of ``2n`` points, ``pi`` on the odd and ``rho`` on the even
  positions;
* :func:`boxtimes_determining_fast` composes one-variable series,
  ``R_a o R_b^{<-1>} o M_{ba'}``;
* :func:`boxtimes_determining_subordination` uses
  ``R_a(F (1 + M_b(F)))`` with ``F = M_b^{<-1>} o M_{ba'}``.

The last part builds the measures ``sigma_k`` attached to powers of a
lambda-circular element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagonal import DeterminingPair, DiagonalDistribution, is_infdiv_r_diagonal, psi
from .gaussian import coeff
from .opmodel import free_mixed_moment
from .partitions import ORACLE_CAP, OracleCapExceeded, SetPartition, _check_n, noncrossing_blocks
from .series import PowerSeries, ps_comp_inverse, ps_compose, ps_invert_unit, ps_product
from .transforms import (
    AtomicMeasure,
    convolution_power,
    free_mult_convolve,
    moments_from_eta1,
    moments_from_r1,
    moments_from_s,
    r_from_moments1,
)
from .verdict import Verdict


class CompositionUnavailable(ValueError):
    pass


# --------------------------------------------------------------------------
# split non-crossing pairs


@dataclass(frozen=True)
class SplitNcPair:
    """``pi`` on the odd positions, ``rho`` on the even positions of ``1..2n``; blocks by minimum."""

    n: int
    pi: tuple
    rho: tuple

    def union(self) -> SetPartition:
        return SetPartition(2 * self.n, self.pi + self.rho)


def _parity_colors(n):
    return tuple(i % 2 for i in range(2 * n))


def enumerate_split_pairs(n: int, cap: int | None = ORACLE_CAP):
    """All ``(pi, rho)`` with ``pi`` on odd, ``rho`` on even positions and ``pi u rho`` non-crossing."""
    _check_n(2 * n, cap)
    for blocks in noncrossing_blocks(2 * n, _parity_colors(n)):
        pi = tuple(b for b in blocks if b[0] % 2 == 1)
        rho = tuple(b for b in blocks if b[0] % 2 == 0)
        yield SplitNcPair(n, pi, rho)


def rotate_split_pair(p: SplitNcPair) -> SplitNcPair:
    """Apply ``gamma^{-1}`` to ``pi u rho``; odd and even positions trade places.

    The result has its odd-position part (the image of ``rho``) listed as
    ``pi`` again, so the map stays inside the same index set.
    """
    m = 2 * p.n

    def rot(blocks):
        return tuple(sorted((tuple(sorted(m if x == 1 else x - 1 for x in b)) for b in blocks), key=lambda b: b[0]))

    return SplitNcPair(p.n, rot(p.rho), rot(p.pi))


def _split_sum(first, odd, even, n, cap):
    total = Fraction(0)
    for p in enumerate_split_pairs(n, cap):
        c = first[len(p.pi[0]) - 1]
        for b in p.pi[1:]:
            if not c:
                break
            c = c * odd[len(b) - 1]
        for b in p.rho:
            if not c:
                break
            c = c * even[len(b) - 1]
        total = total + c
    return total


def _pairs(d, dp, n):
    if n is None:
        n = min(len(d), len(dp))
    return d.truncate(n), dp.truncate(n), n


def boxtimes_determining_oracle(d: DeterminingPair, dp: DeterminingPair, n: int | None = None, cap: int | None = ORACLE_CAP) -> DeterminingPair:
    """Direct enumeration of split non-crossing pairs (``2n`` must not exceed ``cap``)."""
    d, dp, n = _pairs(d, dp, n)
    if cap is not None and 2 * n > cap:
        raise OracleCapExceeded(f"oracle size exceeded: 2n={2 * n} > cap={cap}; use boxtimes_determining_fast")
    alpha = tuple(_split_sum(d.alpha, d.beta, dp.alpha, k, cap) for k in range(1, n + 1))
    beta = tuple(_split_sum(dp.beta, dp.alpha, d.beta, k, cap) for k in range(1, n + 1))
    return DeterminingPair(alpha, beta)


def mixed_moment_series(r_x: PowerSeries, r_y: PowerSeries, method: str = "oracle", cap: int | None = ORACLE_CAP) -> PowerSeries:
    """``sum phi((xy)^n) z^n`` for free ``x``, ``y`` with cumulant series ``r_x``, ``r_y``.

    ``method="oracle"`` sums over colored non-crossing partitions;
    ``method="s"`` multiplies S-transforms (needs nonzero first cumulants).
    """
    n = r_x.order
    if method == "s":
        return free_mult_convolve(moments_from_r1(r_x), moments_from_r1(r_y), "s")
    if method != "oracle":
        raise ValueError(f"unknown method {method!r}")
    return PowerSeries([free_mixed_moment(r_x, r_y, "ab" * k, cap) for k in range(1, n + 1)], n)


def _degenerate(d, dp, n):
    """Closed forms when ``beta`` or ``alpha'`` vanishes identically, else ``None``."""
    if not any(d.beta):
        a1 = dp.alpha[0]
        return DeterminingPair(tuple(d.alpha[k - 1] * a1**k for k in range(1, n + 1)), (0,) * n)
    if not any(dp.alpha):
        b1 = d.beta[0]
        return DeterminingPair((0,) * n, tuple(dp.beta[k - 1] * b1**k for k in range(1, n + 1)))
    if not d.beta[0] or not dp.alpha[0]:
        raise CompositionUnavailable(
            "composition path unavailable: beta_1 or alpha'_1 is zero while the sequence is not"
        )
    return None


def boxtimes_determining_fast(d: DeterminingPair, dp: DeterminingPair, n: int | None = None, mixed: str = "oracle", cap: int | None = ORACLE_CAP) -> DeterminingPair:
    """``sum alpha_hat z^n = R_a o R_b^{<-1>} o M_{ba'}`` and ``sum beta_hat z^n = R_b' o R_a'^{<-1>} o M_{a'b}``."""
    d, dp, n = _pairs(d, dp, n)
    deg = _degenerate(d, dp, n)
    if deg is not None:
        return deg
    r_a, r_b, r_ap, r_bp = d.f, d.g, dp.f, dp.g
    m_bap = mixed_moment_series(r_b, r_ap, mixed, cap)
    m_apb = mixed_moment_series(r_ap, r_b, mixed, cap)
    alpha = ps_compose(r_a, ps_compose(ps_comp_inverse(r_b), m_bap))
    beta = ps_compose(r_bp, ps_compose(ps_comp_inverse(r_ap), m_apb))
    return DeterminingPair.from_series(alpha, beta)


def _subordinated(r_outer: PowerSeries, r_inner: PowerSeries, m_mixed: PowerSeries) -> PowerSeries:
    m_inner = moments_from_r1(r_inner)
    f = ps_compose(ps_comp_inverse(m_inner), m_mixed)
    return ps_compose(r_outer, ps_product(f, ps_compose(m_inner, f) + 1))


def boxtimes_determining_subordination(d: DeterminingPair, dp: DeterminingPair, n: int | None = None, mixed: str = "oracle", cap: int | None = ORACLE_CAP) -> DeterminingPair:
    """``sum alpha_hat z^n = R_a(F (1 + M_b(F)))`` with ``F = M_b^{<-1>} o M_{ba'}`` (and the mirror for beta)."""
    d, dp, n = _pairs(d, dp, n)
    deg = _degenerate(d, dp, n)
    if deg is not None:
        return deg
    m_bap = mixed_moment_series(d.g, dp.f, mixed, cap)
    m_apb = mixed_moment_series(dp.f, d.g, mixed, cap)
    alpha = _subordinated(d.f, d.g, m_bap)
    beta = _subordinated(dp.g, dp.f, m_apb)
    return DeterminingPair.from_series(alpha, beta)


def boxtimes_determining(d: DeterminingPair, dp: DeterminingPair, n: int | None = None, cap: int | None = ORACLE_CAP) -> tuple[DeterminingPair, str]:
    """Product pair with the method used: the fast path when available, else the oracle."""
    try:
        return boxtimes_determining_fast(d, dp, n, cap=cap), "composition"
    except CompositionUnavailable:
        return boxtimes_determining_oracle(d, dp, n, cap), "partition-sum"


def _pair_of(nu):
    return nu.pair if isinstance(nu, DiagonalDistribution) else nu


def product_infdiv_check(nu, nu_prime, n: int | None = None) -> Verdict:
    """Truncated infinite-divisibility test on the product's determining pair."""
    pair, _ = boxtimes_determining(_pair_of(nu), _pair_of(nu_prime), n)
    return is_infdiv_r_diagonal(pair)


def kms_parameter(pair: DeterminingPair):
    """``t`` with ``alpha_n = t beta_n`` for all n, or ``None``."""
    t = None
    for a, b in zip(pair.alpha, pair.beta):
        if not b:
            if a:
                return None
            continue
        r = a / b
        if t is None:
            t = r
        elif r != t:
            return None
    return t


# --------------------------------------------------------------------------
# powers of a lambda-circular element


def lambda_circular_pair(lam, n: int) -> DeterminingPair:
    lam = coeff(lam)
    return DeterminingPair((lam,) + (0,) * (n - 1), (1,) + (0,) * (n - 1))


def lambda_tau(lam, j: int) -> AtomicMeasure:
    """``(lam^j/(1+lam^j)) delta_0 + (1/(1+lam^j)) delta_{1+lam^j}``."""
    lj = coeff(lam) ** j
    return AtomicMeasure(((0, lj / (1 + lj)), (1 + lj, 1 / (1 + lj))))


def lambda_circular_sigma_s(lam, k: int, n: int) -> PowerSeries:
    """Moments of ``sigma_k`` by the recursion ``S_{k+1}(z) = S_k(lam z) / (1 + lam z)``.

    ``S_k`` is the S-transform of the BBP image of ``sigma_k``, starting from
    ``S_1 = 1``.  The BBP image is then undone through its R-transform.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    lam = coeff(lam)
    order = n - 1
    s = PowerSeries([], order, const=1)
    for _ in range(k - 1):
        denom = PowerSeries([lam], order, const=1)
        s = ps_product(s.dilate(lam), ps_invert_unit(denom))
    m_b = moments_from_s(s)
    return moments_from_eta1(r_from_moments1(m_b))


def lambda_circular_sigma_product(lam, k: int, n: int, method: str = "s") -> PowerSeries:
    """Moments of ``tau_1 [x] ... [x] tau_{k-1}`` (``delta_1`` when ``k = 1``)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    acc = AtomicMeasure.dirac(1).moment_series(n)
    for j in range(1, k):
        acc = free_mult_convolve(acc, lambda_tau(lam, j).moment_series(n), method)
    return acc


def lambda_circular_sigma(lam, k: int, n: int) -> PowerSeries:
    """``sigma_k`` computed by the S-recursion and by the tau product; both must agree."""
    via_s = lambda_circular_sigma_s(lam, k, n)
    via_product = lambda_circular_sigma_product(lam, k, n)
    if via_s != via_product:
        raise ArithmeticError("S-recursion and tau product disagree")
    return via_s


def lambda_circular_power(lam, k: int, n: int) -> DeterminingPair:
    """Determining pair of ``nu^{[x]k}`` for the lambda-circular ``nu``, by repeated products."""
    base = lambda_circular_pair(lam, n)
    acc = base
    for _ in range(k - 1):
        acc, _ = boxtimes_determining(acc, base, n)
    return acc


def lambda_circular_psi_pair(lam, k: int, n: int) -> DeterminingPair:
    """Pair of ``psi(sigma_k^{uplus lam^k}, sigma_k)``."""
    sigma = lambda_circular_sigma_s(lam, k, n)
    boosted = convolution_power(sigma, coeff(lam) ** k, "boolean")
    return psi(boosted, sigma, n).pair
