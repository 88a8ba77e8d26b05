"""A finite-dimensional operator realizing an eta-diagonal *-distribution.

Given two atomic measures on [0, inf) the construction builds

* ``X = T1 + T2`` on ``H = M1 + M2`` (direct sum), where ``T_j`` is the
  diagonal matrix of the symmetric square roots of the atoms of ``sigma_j``;
* unit vectors ``xi1 = eta1 + 0`` and ``xi2 = 0 + eta2``;
* the rank-one partial isometry ``Y z = <z, xi1> xi2``;
* ``A = V (Y kron X)`` on ``H kron H`` with ``V`` the tensor flip.

The vector state at ``xi = xi1 kron xi2`` then gives ``A`` the *-moments of
the eta-diagonal law built from the two measures.  Everything here is
binary64; :func:`free_mixed_moment` is the one exact routine and is used by
the multiplicative-convolution code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .partitions import _check_n, noncrossing_blocks
from .series import PowerSeries
from .transforms import AtomicMeasure
from .words import canonical_factorization, classify_word, words_up_to

MOMENT_TOL = 1e-10
IDENTITY_TOL = 1e-12
MAX_WORD = 10
MIXED_MOMENT_CAP = 12


def symmetric_sqrt(sigma: AtomicMeasure) -> list[tuple[float, float]]:
    """Atoms ``(t, w)`` become ``(-sqrt t, w/2)`` and ``(sqrt t, w/2)``; an atom at 0 stays."""
    if not sigma.is_positive:
        raise ValueError("not in P+_c: negative atom position")
    out = []
    for t, w in sigma.atoms:
        if t == 0:
            out.append((0.0, float(w)))
        else:
            r = math.sqrt(t)
            out.append((-r, float(w) / 2))
            out.append((r, float(w) / 2))
    return sorted(out)


@dataclass(frozen=True, eq=False)
class OperatorModel:
    sigma1: AtomicMeasure
    sigma2: AtomicMeasure
    X: np.ndarray
    Y: np.ndarray
    V: np.ndarray
    A: np.ndarray
    xi1: np.ndarray
    xi2: np.ndarray
    xi: np.ndarray

    @property
    def dim_h(self) -> int:
        return self.X.shape[0]

    @property
    def A_star(self) -> np.ndarray:
        return self.A.T

    def letter(self, ch: str) -> np.ndarray:
        return self.A if ch == "1" else self.A.T

    def apply(self, w: str, v: np.ndarray | None = None) -> np.ndarray:
        """``A^w v`` (``v`` defaults to ``xi``), applying the rightmost letter first."""
        v = self.xi if v is None else v
        for ch in reversed(w):
            v = self.letter(ch) @ v
        return v

    def state(self, w: str) -> float:
        return float(self.apply(w) @ self.xi)


def _flip(d: int) -> np.ndarray:
    v = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            v[j * d + i, i * d + j] = 1.0
    return v


def build_model(sigma1: AtomicMeasure, sigma2: AtomicMeasure) -> OperatorModel:
    s1, s2 = symmetric_sqrt(sigma1), symmetric_sqrt(sigma2)
    n1, n2 = len(s1), len(s2)
    d = n1 + n2
    x = np.diag([t for t, _ in s1] + [t for t, _ in s2])
    xi1 = np.concatenate([np.sqrt([w for _, w in s1]), np.zeros(n2)])
    xi2 = np.concatenate([np.zeros(n1), np.sqrt([w for _, w in s2])])
    y = np.outer(xi2, xi1)
    v = _flip(d)
    a = v @ np.kron(y, x)
    return OperatorModel(sigma1, sigma2, x, y, v, a, xi1, xi2, np.kron(xi1, xi2))


def model_star_moment(model: OperatorModel, w: str, max_len: int = MAX_WORD) -> complex:
    """``phi_xi(A^w) = <A^w xi, xi>``."""
    if len(w) > max_len:
        raise ValueError(f"word longer than {max_len}")
    if w == "":
        return complex(1.0)
    return complex(model.state(w))


def model_star_moments(model: OperatorModel, order: int) -> dict[str, float]:
    """All *-moments up to ``order``, reusing ``A^v xi`` for shared suffixes."""
    vecs = {"": model.xi}
    out = {}
    for w in words_up_to(order):
        v = model.letter(w[0]) @ vecs[w[1:]]
        vecs[w] = v
        out[w] = float(v @ model.xi)
    return out


def structural_residuals(model: OperatorModel, kmax: int = 6) -> dict[str, float]:
    """Deviation of each defining property of the construction (all should be ~0)."""
    x, y, v, a = model.X, model.Y, model.V, model.A
    xi1, xi2 = model.xi1, model.xi2
    eye_h = np.eye(model.dim_h)
    res = {
        "norm xi1": abs(np.linalg.norm(xi1) - 1),
        "norm xi2": abs(np.linalg.norm(xi2) - 1),
        "<xi1,xi2>": abs(xi1 @ xi2),
        "V^2 = I": np.abs(v @ v - np.eye(v.shape[0])).max(),
        "Y*Y xi1 = xi1": np.abs(y.T @ y @ xi1 - xi1).max(),
        "YY* xi2 = xi2": np.abs(y @ y.T @ xi2 - xi2).max(),
        "AA* = X^2 kron YY*": np.abs(a @ a.T - np.kron(x @ x, y @ y.T)).max(),
        "A*A = Y*Y kron X^2": np.abs(a.T @ a - np.kron(y.T @ y, x @ x)).max(),
        "A^2 = XY kron YX": np.abs(a @ a - np.kron(x @ y, y @ x)).max(),
        "A*^2 = Y*X kron XY*": np.abs(a.T @ a.T - np.kron(y.T @ x, x @ y.T)).max(),
    }
    xk = eye_h
    cross = 0.0
    for _ in range(kmax):
        xk = xk @ x
        cross = max(cross, abs(xk @ xi1 @ xi2), abs(xk @ xi2 @ xi1))
    res["<X^k xi1, xi2>"] = cross
    return res


def even_moment_residual(model: OperatorModel, kmax: int = 6) -> float:
    """Largest gap between ``<X^{2k} xi_j, xi_j>`` and the k-th moment of ``sigma_j``; odd ones vanish."""
    worst = 0.0
    for xi, sigma in ((model.xi1, model.sigma1), (model.xi2, model.sigma2)):
        xk = np.eye(model.dim_h)
        for k in range(1, 2 * kmax + 1):
            xk = xk @ model.X
            val = xk @ xi @ xi
            target = float(sigma.moment(k // 2)) if k % 2 == 0 else 0.0
            worst = max(worst, abs(val - target))
    return worst


def alternating_state_residuals(model: OperatorModel, kmax: int = 3) -> dict[str, float]:
    """States of ``A^e (AA*)^k`` and ``A^e (A*A)^k`` against their closed forms."""
    out = {}
    for k in range(kmax + 1):
        m1, m2 = float(model.sigma1.moment(k)), float(model.sigma2.moment(k))
        out[f"phi((AA*)^{k})"] = abs(model.state("1*" * k) - m1) if k else 0.0
        out[f"phi(A(AA*)^{k})"] = abs(model.state("1" + "1*" * k))
        out[f"phi(A*(AA*)^{k})"] = abs(model.state("*" + "1*" * k))
        out[f"phi((A*A)^{k})"] = abs(model.state("*1" * k) - m2) if k else 0.0
        out[f"phi(A(A*A)^{k})"] = abs(model.state("1" + "*1" * k))
        out[f"phi(A*(A*A)^{k})"] = abs(model.state("*" + "*1" * k))
    return out


def vector_identity_residuals(model: OperatorModel, kmax: int = 3) -> dict[str, float]:
    """Vectors ``A^2 (AA*)^k xi`` etc. that vanish or are multiples of ``A*A xi``."""
    out = {}
    a_star_a = model.apply("*1")
    a_a_star = model.apply("1*")
    for k in range(kmax + 1):
        m1, m2 = float(model.sigma1.moment(k)), float(model.sigma2.moment(k))
        out[f"A^2(AA*)^{k}xi"] = np.abs(model.apply("11" + "1*" * k)).max()
        out[f"A*^2(AA*)^{k}xi"] = np.abs(model.apply("**" + "1*" * k)).max()
        out[f"A*A(AA*)^{k}xi"] = np.abs(model.apply("*1" + "1*" * k) - m1 * a_star_a).max()
        out[f"A^2(A*A)^{k}xi"] = np.abs(model.apply("11" + "*1" * k)).max()
        out[f"A*^2(A*A)^{k}xi"] = np.abs(model.apply("**" + "*1" * k)).max()
        out[f"AA*(A*A)^{k}xi"] = np.abs(model.apply("1*" + "*1" * k) - m2 * a_a_star).max()
    return out


def factorization_residual(model: OperatorModel, w: str) -> float:
    """``|| W xi - phi(W_2)...phi(W_d) W_1 xi ||`` for a mixed-alternating word."""
    if not classify_word(w).is_mixed_alternating:
        raise ValueError(f"{w!r} is not mixed-alternating")
    factors = canonical_factorization(w)
    scale = 1.0
    for f in factors[1:]:
        scale *= model.state(f)
    return float(np.linalg.norm(model.apply(w) - scale * model.apply(factors[0])))


# --------------------------------------------------------------------------
# exact mixed moments of free variables


def free_mixed_moment(kappa_a: PowerSeries, kappa_b: PowerSeries, pattern: str, cap: int | None = MIXED_MOMENT_CAP):
    """``phi(x_1 ... x_n)`` for free ``a``, ``b`` given their free cumulants.

    ``pattern`` is a string over ``"ab"``.  Sums block products of cumulants
    over non-crossing partitions whose blocks are monochromatic; mixed blocks
    would carry mixed cumulants, which vanish by freeness.
    """
    n = len(pattern)
    if set(pattern) - {"a", "b"}:
        raise ValueError("pattern letters must be 'a' or 'b'")
    _check_n(n, cap)
    # the largest block of each color is at most that color's letter count
    if pattern.count("a") > kappa_a.order or pattern.count("b") > kappa_b.order:
        raise ValueError("cumulant series too short for this pattern")
    kappa = {"a": kappa_a, "b": kappa_b}
    total = Fraction(0)
    for blocks in noncrossing_blocks(n, tuple(pattern)):
        c = Fraction(1)
        for b in blocks:
            c = c * kappa[pattern[b[0] - 1]][len(b)]
            if not c:
                break
        total = total + c
    return total
