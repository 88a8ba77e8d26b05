"""Moment, eta, R and S transforms, convolutions and the BBP map.

Two-variable functions take and return :class:`NcSeries` (moment series
``M`` with ``Cf_w(M) = mu(Z^w)``); their one-variable counterparts carry a
``1`` suffix and work on :class:`PowerSeries`.  Most transforms exist twice:
a series-algebra fast path and a partition-sum oracle that enumerates
interval or non-crossing partitions directly.  The test-suite pits them
against each other.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .gaussian import GaussianRational, I, coeff, is_real
from .partitions import ORACLE_CAP, _check_n, interval_blocks, noncrossing_blocks
from .series import (
    NcSeries,
    OrderMismatch,
    PowerSeries,
    cf_block_product,
    nc_geom_inverse,
    nc_product,
    nc_substitute,
    ps_comp_inverse,
    ps_compose,
    ps_invert_unit,
    ps_product,
)
from .verdict import Verdict
from .words import all_words


# --------------------------------------------------------------------------
# distributions and measures


@dataclass(frozen=True)
class StarDistribution:
    """A *-distribution given by its moment series; ``mu(1) = 1`` is implicit."""

    moments: NcSeries

    def __post_init__(self):
        if self.moments.const:
            raise ValueError("moment series must have zero constant term")

    @property
    def order(self):
        return self.moments.order

    def moment(self, w: str):
        return Fraction(1) if w == "" else self.moments[w]

    def eta(self) -> NcSeries:
        return eta_from_moments(self.moments)

    def r(self) -> NcSeries:
        return r_from_moments(self.moments)

    @classmethod
    def from_eta(cls, eta: NcSeries):
        return cls(moments_from_eta(eta))

    @classmethod
    def from_r(cls, r: NcSeries):
        return cls(moments_from_r(r))


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely supported probability measure ``sum_i w_i delta_{t_i}`` on the line."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((Fraction(coeff(t)), Fraction(coeff(w))) for t, w in self.atoms)
        if not atoms:
            raise ValueError("a measure needs at least one atom")
        positions = [t for t, _ in atoms]
        if len(set(positions)) != len(positions):
            raise ValueError("atom positions must be distinct")
        if any(w <= 0 for _, w in atoms):
            raise ValueError("atom weights must be positive")
        if sum(w for _, w in atoms) != 1:
            raise ValueError("atom weights must sum to 1")
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))

    @classmethod
    def dirac(cls, a):
        return cls(((a, 1),))

    @property
    def is_positive(self) -> bool:
        """Supported on [0, inf)."""
        return all(t >= 0 for t, _ in self.atoms)

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("moment index must be >= 0")
        return sum((w * t**n for t, w in self.atoms), Fraction(0))

    @property
    def mean(self):
        return self.moment(1)

    def moment_series(self, order: int) -> PowerSeries:
        return PowerSeries([self.moment(n) for n in range(1, order + 1)], order)

    def to_json(self):
        return {"atoms": [[str(t), str(w)] for t, w in self.atoms]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(tuple((Fraction(t), Fraction(w)) for t, w in obj["atoms"]))


@dataclass(frozen=True)
class FreePoissonParams:
    """Free Poisson law with rate ``p`` and jump ``q``; ``R(z) = pqz/(1-qz)``."""

    rate: Fraction
    jump: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rate", Fraction(self.rate))
        object.__setattr__(self, "jump", Fraction(self.jump))
        if self.rate <= 0 or self.jump <= 0:
            raise ValueError("rate and jump must be positive")

    def r_series(self, order: int) -> PowerSeries:
        p, q = self.rate, self.jump
        return PowerSeries([p * q**n for n in range(1, order + 1)], order)

    def moment_series(self, order: int) -> PowerSeries:
        return moments_from_r1(self.r_series(order))


def measure_moments(sigma: AtomicMeasure, n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    return sigma.moment(n)


def eta_of_measure(sigma: AtomicMeasure, order: int) -> PowerSeries:
    return eta_from_moments1(sigma.moment_series(order))


def as_moment_series(x, order: int) -> PowerSeries:
    """Moments of an atomic measure, or a moment series passed through (checked for order)."""
    if isinstance(x, AtomicMeasure):
        return x.moment_series(order)
    if isinstance(x, PowerSeries):
        if x.const:
            raise ValueError("moment series must have zero constant term")
        if x.order < order:
            raise OrderMismatch(f"moment series has order {x.order} < {order}")
        return x.truncate(order)
    raise TypeError(f"expected AtomicMeasure or PowerSeries, got {type(x).__name__}")


# --------------------------------------------------------------------------
# eta <-> moments, two variables


def eta_from_moments(m: NcSeries) -> NcSeries:
    """``eta = M (1+M)^{-1}``."""
    if m.const:
        raise ValueError("moment series must have zero constant term")
    return nc_product(m, 1 + nc_geom_inverse(m))


def moments_from_eta(eta: NcSeries) -> NcSeries:
    """``M = (1-eta)^{-1} eta = sum_{k>=1} eta^k``."""
    if eta.const:
        raise ValueError("eta series must have zero constant term")
    return nc_geom_inverse(-eta)


def eta_coeff_oracle(m: NcSeries, w: str, cap: int | None = ORACLE_CAP):
    """``Cf_w(eta)`` as a signed sum over interval partitions of ``|w|``."""
    n = len(w)
    _check_n(n, cap)
    total = Fraction(0)
    for blocks in interval_blocks(n):
        c = cf_block_product(m, w, blocks)
        if c:
            total = total + (c if len(blocks) % 2 else -c)
    return total


def moment_coeff_from_eta_oracle(eta: NcSeries, w: str, cap: int | None = ORACLE_CAP):
    """``Cf_w(M)`` as a plain sum over interval partitions."""
    n = len(w)
    _check_n(n, cap)
    total = Fraction(0)
    for blocks in interval_blocks(n):
        total = total + cf_block_product(eta, w, blocks)
    return total


# --------------------------------------------------------------------------
# R <-> moments, two variables


def _first_block_sum(w, r, mt, skip_full):
    """Sum over the block S containing position 1 of ``R_{w|S}`` times gap moments.

    Any non-crossing partition splits into its first block and independent
    non-crossing partitions of the gaps between consecutive elements of that
    block, so the moment-cumulant sum collapses to a sum over subsets.
    ``mt`` maps words to moments with ``mt[""] == 1``.
    """
    n = len(w)
    total = Fraction(0)
    stack = [(0, w[0], Fraction(1))]
    while stack:
        last, letters, acc = stack.pop()
        tail = mt.get(w[last + 1 :], 0)
        if tail and not (skip_full and len(letters) == n):
            c = r.get(letters, 0)
            if c:
                total = total + c * acc * tail
        for nxt in range(last + 1, n):
            gap = mt.get(w[last + 1 : nxt], 0)
            if gap:
                stack.append((nxt, letters + w[nxt], acc * gap))
    return total


def moments_from_r(r: NcSeries) -> NcSeries:
    """Moments from free cumulants via the first-block recursion."""
    if r.const:
        raise ValueError("R series must have zero constant term")
    rc = r.coeffs
    mt = {"": Fraction(1)}
    for n in range(1, r.order + 1):
        for w in all_words(n, r.alphabet):
            c = _first_block_sum(w, rc, mt, False)
            if c:
                mt[w] = c
    del mt[""]
    return NcSeries(r.order, mt, 0, r.alphabet)


def r_from_moments(m: NcSeries) -> NcSeries:
    """Triangular solve of the moment-cumulant relation; the full block isolates ``Cf_w(R)``."""
    if m.const:
        raise ValueError("moment series must have zero constant term")
    mt = dict(m.coeffs)
    mt[""] = Fraction(1)
    rc = {}
    for n in range(1, m.order + 1):
        for w in all_words(n, m.alphabet):
            c = mt.get(w, 0) - _first_block_sum(w, rc, mt, True)
            if c:
                rc[w] = c
    return NcSeries(m.order, rc, 0, m.alphabet)


def moment_coeff_from_r_oracle(r: NcSeries, w: str, cap: int | None = ORACLE_CAP):
    """``Cf_w(M)`` as the sum over NC(|w|) of block products of ``R``."""
    n = len(w)
    _check_n(n, cap)
    total = Fraction(0)
    for blocks in noncrossing_blocks(n):
        total = total + cf_block_product(r, w, blocks)
    return total


def moments_from_r_oracle(r: NcSeries, cap: int | None = ORACLE_CAP) -> NcSeries:
    _check_n(r.order, cap)
    out = {w: moment_coeff_from_r_oracle(r, w, cap) for w in r.words()}
    return NcSeries(r.order, out, 0, r.alphabet)


def r_from_moments_oracle(m: NcSeries, cap: int | None = ORACLE_CAP) -> NcSeries:
    """Triangular solve using explicit NC(n) enumeration instead of the first-block shortcut."""
    _check_n(m.order, cap)
    rc = {}
    partial = NcSeries(m.order, {}, 0, m.alphabet)
    for n in range(1, m.order + 1):
        parts = noncrossing_blocks(n)[1:]  # drop 1_n, listed first
        for w in all_words(n, m.alphabet):
            rest = Fraction(0)
            for blocks in parts:
                rest = rest + cf_block_product(partial, w, blocks)
            c = m[w] - rest
            if c:
                rc[w] = c
        partial = NcSeries(m.order, rc, 0, m.alphabet)
    return partial


def _rescaled_letters(m: NcSeries) -> dict:
    one_plus_m = 1 + m
    return {
        letter: nc_product(NcSeries(m.order, {letter: 1}, 0, m.alphabet), one_plus_m)
        for letter in m.alphabet
    }


def r_functional_residual(r: NcSeries, m: NcSeries) -> NcSeries:
    """``R(z(1+M), z*(1+M)) - M``; zero exactly when ``r`` is the R-transform of ``m``."""
    return nc_substitute(r, _rescaled_letters(m)) - m


def r_from_moments_functional(m: NcSeries) -> NcSeries:
    """Solve ``R(z(1+M), z*(1+M)) = M`` by fixed-point correction.

    Substitution changes only terms of higher degree than the input, so each
    pass fixes at least one more degree.
    """
    if m.const:
        raise ValueError("moment series must have zero constant term")
    images = _rescaled_letters(m)
    r = m
    for _ in range(m.order):
        residual = m - nc_substitute(r, images)
        if residual.is_zero():
            break
        r = r + residual
    return r


# --------------------------------------------------------------------------
# one-variable transforms


def _unit_plus(f: PowerSeries) -> PowerSeries:
    return f + 1


def eta_from_moments1(m: PowerSeries) -> PowerSeries:
    """``eta = M / (1+M)``."""
    if m.const:
        raise ValueError("moment series must have zero constant term")
    return ps_product(m, ps_invert_unit(_unit_plus(m)))


def moments_from_eta1(eta: PowerSeries) -> PowerSeries:
    """``M = eta / (1-eta)``."""
    if eta.const:
        raise ValueError("eta series must have zero constant term")
    return ps_product(eta, ps_invert_unit(1 - eta))


def eta_coeff_oracle1(m: PowerSeries, n: int, cap: int | None = ORACLE_CAP):
    _check_n(n, cap)
    total = Fraction(0)
    for blocks in interval_blocks(n):
        c = Fraction(1)
        for b in blocks:
            c = c * m[len(b)]
        total = total + (c if len(blocks) % 2 else -c)
    return total


def r_from_moments1(m: PowerSeries) -> PowerSeries:
    """``R = M o h^{<-1>}`` with ``h(z) = z (1 + M(z))``."""
    if m.const:
        raise ValueError("moment series must have zero constant term")
    if m.order == 0:
        return m
    h = ps_product(PowerSeries.z(m.order), _unit_plus(m))
    return ps_compose(m, ps_comp_inverse(h))


def moments_from_r1(r: PowerSeries) -> PowerSeries:
    """Iterate ``M <- R(z (1+M))``; each pass fixes one more degree."""
    if r.const:
        raise ValueError("R series must have zero constant term")
    z = PowerSeries.z(r.order) if r.order else r
    m = r
    for _ in range(r.order):
        nxt = ps_compose(r, ps_product(z, _unit_plus(m)))
        if nxt == m:
            break
        m = nxt
    return m


def moment_coeff_from_r_oracle1(r: PowerSeries, n: int, cap: int | None = ORACLE_CAP):
    """``m_n`` as the NC(n) sum of products of ``r_{|V|}``."""
    _check_n(n, cap)
    total = Fraction(0)
    for blocks in noncrossing_blocks(n):
        c = Fraction(1)
        for b in blocks:
            c = c * r[len(b)]
            if not c:
                break
        total = total + c
    return total


def one_var_transforms(m: PowerSeries) -> tuple[PowerSeries, PowerSeries]:
    """``(eta, R)`` of a one-variable moment series."""
    return eta_from_moments1(m), r_from_moments1(m)


# --------------------------------------------------------------------------
# S-transform


def s_transform(m: PowerSeries) -> PowerSeries:
    """``S(z) = ((1+z)/z) M^{<-1>}(z)``; order N moments give an order N-1 series."""
    if m.const:
        raise ValueError("moment series must have zero constant term")
    if m.order < 1 or not m[1]:
        raise ValueError("S-transform undefined at zero mean")
    inv = ps_comp_inverse(m).shift_down()
    one_plus_z = PowerSeries([1], inv.order, const=1) if inv.order else PowerSeries([], 0, const=1)
    return ps_product(inv, one_plus_z)


def moments_from_s(s: PowerSeries) -> PowerSeries:
    """Invert :func:`s_transform`: an order K series gives moments of order K+1."""
    if not s.const:
        raise ValueError("S-transform must have nonzero constant term")
    k = s.order
    one_plus_z = PowerSeries([1], k, const=1) if k else PowerSeries([], 0, const=1)
    inv = ps_product(s, ps_invert_unit(one_plus_z)).shift_up()
    return ps_comp_inverse(inv)


# --------------------------------------------------------------------------
# convolutions


def _kind(x):
    if isinstance(x, StarDistribution):
        return "star"
    if isinstance(x, NcSeries):
        return "nc"
    if isinstance(x, PowerSeries):
        return "ps"
    raise TypeError(f"unsupported distribution type {type(x).__name__}")


def _moments(x):
    return x.moments if isinstance(x, StarDistribution) else x


def _rewrap(kind, m):
    return StarDistribution(m) if kind == "star" else m


def _transform_pair(kind, which):
    one = kind == "ps"
    if which == "free":
        return (r_from_moments1, moments_from_r1) if one else (r_from_moments, moments_from_r)
    return (eta_from_moments1, moments_from_eta1) if one else (eta_from_moments, moments_from_eta)


def _combine(mu, nu, which):
    k1, k2 = _kind(mu), _kind(nu)
    if k1 != k2:
        raise TypeError("cannot convolve distributions of different kinds")
    a, b = _moments(mu), _moments(nu)
    if a.order != b.order:
        raise OrderMismatch(f"order mismatch: {a.order} vs {b.order}")
    fwd, back = _transform_pair(k1, which)
    return _rewrap(k1, back(fwd(a) + fwd(b)))


def free_convolve(mu, nu):
    """Free additive convolution: R-transforms add."""
    return _combine(mu, nu, "free")


def boolean_convolve(mu, nu):
    """Boolean convolution: eta-series add."""
    return _combine(mu, nu, "boolean")


def convolution_power(sigma, t, kind: str = "free"):
    """``sigma^{boxplus t}`` (``kind="free"``) or ``sigma^{uplus t}`` (``kind="boolean"``)."""
    t = coeff(t)
    if not is_real(t) or t <= 0:
        raise ValueError("convolution power needs t > 0")
    if kind not in ("free", "boolean"):
        raise ValueError(f"unknown convolution kind {kind!r}")
    k = _kind(sigma)
    fwd, back = _transform_pair(k, kind)
    return _rewrap(k, back(fwd(_moments(sigma)).scale(t)))


def bbp(mu):
    """The BBP map: the output's R-transform is the input's eta-series."""
    k = _kind(mu)
    if k == "ps":
        return bbp1(mu)
    return _rewrap(k, moments_from_r(eta_from_moments(_moments(mu))))


def bbp1(sigma) -> PowerSeries:
    """One-variable BBP map on a moment series (or an atomic measure, at its own order)."""
    if isinstance(sigma, AtomicMeasure):
        raise TypeError("pass sigma.moment_series(N) to fix the order")
    return moments_from_r1(eta_from_moments1(sigma))


def bbp1_via_powers(sigma: PowerSeries) -> PowerSeries:
    """``(sigma^{boxplus 2})^{uplus 1/2}``, an independent route to :func:`bbp1`."""
    return convolution_power(convolution_power(sigma, 2, "free"), Fraction(1, 2), "boolean")


def free_mult_convolve(m1: PowerSeries, m2: PowerSeries, method: str = "auto") -> PowerSeries:
    """Moments of the free multiplicative convolution of two moment series.

    ``method="s"`` multiplies S-transforms (both means nonzero);
    ``method="oracle"`` sums free cumulants over non-crossing partitions of
    the alternating pattern ``abab...``; ``"auto"`` prefers the S-path.
    """
    if m1.order != m2.order:
        raise OrderMismatch(f"order mismatch: {m1.order} vs {m2.order}")
    if method not in ("auto", "s", "oracle"):
        raise ValueError(f"unknown method {method!r}")
    if method == "s" or (method == "auto" and m1[1] and m2[1]):
        return moments_from_s(ps_product(s_transform(m1), s_transform(m2)))
    return free_mult_convolve_oracle(m1, m2)


def free_mult_convolve_oracle(m1: PowerSeries, m2: PowerSeries, cap: int | None = ORACLE_CAP) -> PowerSeries:
    from .opmodel import free_mixed_moment

    order = m1.order
    _check_n(2 * order, cap)
    k1, k2 = r_from_moments1(m1), r_from_moments1(m2)
    return PowerSeries([free_mixed_moment(k1, k2, "ab" * n, cap) for n in range(1, order + 1)], order)


def free_mult_convolve_measures(sigma: AtomicMeasure, tau: AtomicMeasure, order: int, method: str = "auto") -> PowerSeries:
    return free_mult_convolve(sigma.moment_series(order), tau.moment_series(order), method)


# --------------------------------------------------------------------------
# change of variables z, z* <-> x1, x2

X_ALPHABET = "12"
_HALF = Fraction(1, 2)
# rows: x-letter, columns: z-letter
_D_MATRIX = {
    "1": {"1": _HALF, "*": _HALF},
    "2": {"1": 1 / (2 * I), "*": -1 / (2 * I)},
}
# rows: z-letter, columns: x-letter
_C_MATRIX = {
    "1": {"1": Fraction(1), "2": I},
    "*": {"1": Fraction(1), "2": -I},
}


def _change_letters(f: NcSeries, matrix, target: str) -> NcSeries:
    out = {}
    for w, c in f.coeffs.items():
        n = len(w)
        for image in itertools.product(target, repeat=n):
            factor = c
            for i, letter in zip(image, w):
                factor = factor * matrix[i][letter]
            key = "".join(image)
            out[key] = out.get(key, 0) + factor
    return NcSeries(f.order, out, f.const, target)


def decomplexify(f: NcSeries) -> NcSeries:
    """Series in ``z, z*`` to series in ``x1, x2`` for ``b1 = (a+a*)/2``, ``b2 = (a-a*)/(2i)``."""
    if f.alphabet != "1*":
        raise ValueError("decomplexify expects a series over z, z*")
    return _change_letters(f, _D_MATRIX, X_ALPHABET)


def complexify(g: NcSeries) -> NcSeries:
    """Inverse of :func:`decomplexify`: series in ``x1, x2`` back to ``z, z*``."""
    if g.alphabet != X_ALPHABET:
        raise ValueError("complexify expects a series over x1, x2")
    return _change_letters(g, _C_MATRIX, "1*")


# --------------------------------------------------------------------------
# truncated membership test for eta-series of measures on [0, inf)


def _det(rows):
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] / p
                for k in range(col, n):
                    a[r][k] = a[r][k] - factor * a[col][k]
    return det


def psd_witness(matrix):
    """First principal index set with a negative minor, or ``None`` if the matrix is PSD."""
    n = len(matrix)
    for size in range(1, n + 1):
        for idx in itertools.combinations(range(n), size):
            d = _det([[matrix[i][j] for j in idx] for i in idx])
            if d < 0:
                return idx, d
    return None


def _hankel_verdict(seq, n, label, offset=0, size=None):
    """Check ``(seq[i+j+offset])`` for ``0 <= i, j < size``."""
    if size is None:
        size = (n - offset) // 2 + 1
    if size <= 0:
        return None
    matrix = [[seq[i + j + offset] for j in range(size)] for i in range(size)]
    bad = psd_witness(matrix)
    if bad:
        idx, d = bad
        return Verdict.failed(n, f"{label} minor on rows {list(idx)} is {d}", witness=[list(idx), str(d)])
    return None


def stieltjes_truncated(m: PowerSeries) -> Verdict:
    """Truncated Stieltjes test on moments ``m_1..m_N`` (with ``m_0 = 1``).

    Both ``(m_{i+j})`` and the shifted ``(m_{i+j+1})`` must be positive
    semidefinite, as they are for any measure on [0, inf).
    """
    n = m.order
    if any(isinstance(c, GaussianRational) for c in m.c):
        return Verdict.failed(n, "not real")
    seq = [Fraction(1)] + list(m.c[1:])
    for offset, label in ((0, "Hankel"), (1, "shifted Hankel")):
        bad = _hankel_verdict(seq, n, label, offset)
        if bad is not None:
            return bad
    return Verdict.passed(n)


def in_E_plus_truncated(f: PowerSeries, order: int | None = None) -> Verdict:
    """Truncated test that ``f`` is the eta-series of a measure on [0, inf).

    Reads ``M = f/(1-f)`` as moments ``m_0 = 1, m_1..m_N`` and applies
    :func:`stieltjes_truncated`.  A pass only means no obstruction up to order N.
    """
    n = f.order if order is None else order
    if n > f.order:
        raise OrderMismatch(f"series has order {f.order} < {n}")
    if f.const:
        return Verdict.failed(n, "nonzero constant term")
    f = f.truncate(n)
    if any(isinstance(c, GaussianRational) for c in f.c):
        return Verdict.failed(n, "not real")
    return stieltjes_truncated(moments_from_eta1(f))


def free_infdiv_truncated(r: PowerSeries) -> Verdict:
    """Truncated free Levy-Khintchine test on a real cumulant series.

    For a compactly supported law on the line, infinite divisibility under
    free additive convolution means ``kappa_{n+2}`` are the moments of a
    finite positive measure, so ``(kappa_{i+j+2})`` must be PSD.
    """
    n = r.order
    if any(isinstance(c, GaussianRational) for c in r.c):
        return Verdict.failed(n, "not real")
    bad = _hankel_verdict(list(r.c), n, "cumulant Hankel", 2)
    return bad if bad is not None else Verdict.passed(n)
