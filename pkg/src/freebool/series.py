"""Truncated formal power series with exact coefficients.

:class:`NcSeries` is a series in noncommuting indeterminates, one per letter
of its alphabet (``"1*"`` for z, z*; ``"12"`` for x1, x2), stored sparsely as
``{word: coefficient}``.  :class:`PowerSeries` is a one-variable series stored
densely as ``c_0..c_N``.

Truncation contract: an operation on series of order N is exact on every
coefficient of degree <= N and drops everything above.  Mixing orders raises
instead of silently taking the minimum.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import gaussian
from .gaussian import coeff
from .words import ALPHABET, restrict_word, words_up_to


class OrderMismatch(ValueError):
    pass


def _check_same(f, g):
    if f.order != g.order:
        raise OrderMismatch(f"order mismatch: {f.order} vs {g.order}")
    if getattr(f, "alphabet", None) != getattr(g, "alphabet", None):
        raise ValueError(f"alphabet mismatch: {f.alphabet!r} vs {g.alphabet!r}")


class NcSeries:
    """Truncated noncommutative series ``const + sum_w c_w z^w`` over ``alphabet``."""

    __slots__ = ("order", "coeffs", "const", "alphabet", "_by_len")

    def __init__(self, order: int, coeffs=None, const=0, alphabet: str = ALPHABET):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        self.alphabet = alphabet
        self.const = coeff(const)
        clean = {}
        letters = set(alphabet)
        for w, c in (coeffs or {}).items():
            if not w:
                raise ValueError("use const= for the constant term")
            if not set(w) <= letters:
                raise ValueError(f"word {w!r} not over alphabet {alphabet!r}")
            if len(w) > order:
                continue
            c = coeff(c)
            if c:
                clean[w] = c
        self.coeffs = clean
        self._by_len = None

    # basic access ----------------------------------------------------------
    def __getitem__(self, w):
        if w == "":
            return self.const
        return self.coeffs.get(w, Fraction(0))

    def cf(self, w):
        return self[w]

    def items(self):
        return self.coeffs.items()

    def by_length(self):
        if self._by_len is None:
            buckets = [[] for _ in range(self.order + 1)]
            for w, c in self.coeffs.items():
                buckets[len(w)].append((w, c))
            self._by_len = buckets
        return self._by_len

    def words(self):
        return words_up_to(self.order, self.alphabet)

    def is_zero(self):
        return not self.coeffs and not self.const

    def __eq__(self, other):
        if not isinstance(other, NcSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.alphabet == other.alphabet
            and self.const == other.const
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.alphabet, self.const, frozenset(self.coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"{w!r}: {c}" for w, c in sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0])))
        return f"NcSeries(order={self.order}, const={self.const}, {{{terms}}})"

    # constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, order, alphabet=ALPHABET):
        return cls(order, {}, 0, alphabet)

    @classmethod
    def one(cls, order, alphabet=ALPHABET):
        return cls(order, {}, 1, alphabet)

    @classmethod
    def monomial(cls, w, c=1, order=None, alphabet=ALPHABET):
        return cls(order if order is not None else max(len(w), 1), {w: c}, 0, alphabet)

    def with_order(self, order):
        return NcSeries(order, self.coeffs, self.const, self.alphabet)

    def without_const(self):
        return NcSeries(self.order, self.coeffs, 0, self.alphabet)

    # linear structure ------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, NcSeries):
            _check_same(self, other)
            out = dict(self.coeffs)
            for w, c in other.coeffs.items():
                out[w] = out.get(w, 0) + c
            return NcSeries(self.order, out, self.const + other.const, self.alphabet)
        return NcSeries(self.order, self.coeffs, self.const + coeff(other), self.alphabet)

    __radd__ = __add__

    def __neg__(self):
        return NcSeries(self.order, {w: -c for w, c in self.coeffs.items()}, -self.const, self.alphabet)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = coeff(s)
        return NcSeries(self.order, {w: s * c for w, c in self.coeffs.items()}, s * self.const, self.alphabet)

    def __mul__(self, other):
        if isinstance(other, NcSeries):
            return nc_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def map_coeffs(self, fn):
        return NcSeries(self.order, {w: fn(w, c) for w, c in self.coeffs.items()}, self.const, self.alphabet)

    # serialization -----------------------------------------------------------
    def to_json(self):
        keys = sorted(self.coeffs, key=lambda w: (len(w), [self.alphabet.index(ch) for ch in w]))
        obj = {"kind": "nc2", "order": self.order}
        if self.alphabet != ALPHABET:
            obj["alphabet"] = self.alphabet
        if self.const:
            obj["const"] = gaussian.to_json(self.const)
        obj["coeffs"] = {w: gaussian.to_json(self.coeffs[w]) for w in keys}
        return obj

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        if obj.get("kind") != "nc2":
            raise ValueError(f"expected kind 'nc2', got {obj.get('kind')!r}")
        const = gaussian.from_json(obj["const"]) if "const" in obj else 0
        coeffs = {w: gaussian.from_json(c) for w, c in obj.get("coeffs", {}).items()}
        return cls(int(obj["order"]), coeffs, const, obj.get("alphabet", ALPHABET))


def nc_product(f: NcSeries, g: NcSeries) -> NcSeries:
    """Concatenation product, truncated at the common order."""
    _check_same(f, g)
    n = f.order
    out = {}
    gl = g.by_length()
    if g.const:
        for w, c in f.coeffs.items():
            out[w] = out.get(w, 0) + c * g.const
    if f.const:
        for w, c in g.coeffs.items():
            out[w] = out.get(w, 0) + f.const * c
    for u, a in f.coeffs.items():
        room = n - len(u)
        for k in range(1, room + 1):
            for v, b in gl[k]:
                uv = u + v
                out[uv] = out.get(uv, 0) + a * b
    return NcSeries(n, out, f.const * g.const, f.alphabet)


def nc_power(f: NcSeries, k: int) -> NcSeries:
    out = NcSeries.one(f.order, f.alphabet)
    for _ in range(k):
        out = nc_product(out, f)
    return out


def nc_geom_inverse(f: NcSeries) -> NcSeries:
    """``g`` with ``(1+f)(1+g) = 1``, i.e. ``g = sum_{k>=1} (-f)^k``."""
    if f.const:
        raise ValueError("nc_geom_inverse needs zero constant term")
    neg = -f
    g = neg
    power = neg
    for _ in range(f.order - 1):
        power = nc_product(power, neg)
        if power.is_zero():
            break
        g = g + power
    return g


def nc_unit_inverse(f: NcSeries) -> NcSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if f.const != 1:
        raise ValueError("nc_unit_inverse needs constant term 1")
    return 1 + nc_geom_inverse(f.without_const())


def cf_block_product(f: NcSeries, w: str, blocks) -> object:
    """Product over blocks B of the coefficient of ``w|B`` in ``f``."""
    if hasattr(blocks, "n"):
        if blocks.n != len(w):
            raise ValueError(f"word length {len(w)} != partition size {blocks.n}")
        blocks = blocks.blocks
    elif sum(len(b) for b in blocks) != len(w):
        raise ValueError("word length does not match partition size")
    out = Fraction(1)
    for b in blocks:
        c = f[restrict_word(w, b)]
        if not c:
            return Fraction(0)
        out = out * c
    return out


def nc_substitute(f: NcSeries, images: dict) -> NcSeries:
    """``f`` with each letter replaced by a series (all images: zero constant term).

    Evaluated along the prefix tree of ``f``:
    ``S(f) = f_0 + sum_l images[l] * S(d_l f)`` with ``d_l`` the left
    derivative stripping a leading letter ``l``.  A node at depth d only needs
    degrees up to ``order - d``, which keeps the cost near linear in the tree.
    """
    order = f.order
    alphabet = None
    for img in images.values():
        if img.const:
            raise ValueError("substituted series must have zero constant term")
        if img.order != order:
            raise OrderMismatch("image order must match")
        alphabet = img.alphabet
    img_by_len = {letter: img.by_length() for letter, img in images.items()}

    def rec(node, budget):
        out = {}
        if node.get("", 0):
            out[""] = node[""]
        if budget == 0:
            return out
        children = {}
        for w, c in node.items():
            if w:
                children.setdefault(w[0], {})[w[1:]] = c
        for letter, sub in children.items():
            inner = rec(sub, budget - 1)
            if not inner:
                continue
            layers = img_by_len[letter]
            for v, b in inner.items():
                room = budget - len(v)
                for k in range(1, room + 1):
                    for u, a in layers[k]:
                        uv = u + v
                        out[uv] = out.get(uv, 0) + a * b
        return out

    base = dict(f.coeffs)
    if f.const:
        base[""] = f.const
    res = rec(base, order)
    const = res.pop("", 0)
    return NcSeries(order, res, const, alphabet or f.alphabet)


# --------------------------------------------------------------------------
# one-variable series


class PowerSeries:
    """Truncated series ``c_0 + c_1 z + ... + c_N z^N``."""

    __slots__ = ("order", "c")

    def __init__(self, coeffs, order: int | None = None, const=None):
        """``coeffs`` lists ``c_1..c_N``; ``const`` sets ``c_0`` (default 0).

        ``order`` defaults to ``len(coeffs)``; shorter lists are zero-padded.
        """
        cs = [coeff(x) for x in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = cs[:order] + [Fraction(0)] * (order - len(cs))
        self.order = order
        self.c = (coeff(const) if const is not None else Fraction(0),) + tuple(cs)

    @classmethod
    def from_full(cls, full, order=None):
        full = list(full)
        return cls(full[1:], order if order is not None else len(full) - 1, const=full[0])

    @classmethod
    def z(cls, order):
        return cls([1], order)

    @classmethod
    def constant(cls, c, order):
        return cls([], order, const=c)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return self.c[k]
        if k < 0:
            raise IndexError(k)
        return self.c[k] if k <= self.order else Fraction(0)

    @property
    def const(self):
        return self.c[0]

    def coefficients(self):
        """``[c_1, ..., c_N]``."""
        return list(self.c[1:])

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"PowerSeries({[str(x) for x in self.c]})"

    def truncate(self, order):
        if order > self.order:
            raise OrderMismatch(f"cannot raise order {self.order} to {order}")
        return PowerSeries.from_full(self.c[: order + 1], order)

    def _same(self, other):
        if self.order != other.order:
            raise OrderMismatch(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            self._same(other)
            return PowerSeries.from_full([a + b for a, b in zip(self.c, other.c)], self.order)
        full = list(self.c)
        full[0] = full[0] + coeff(other)
        return PowerSeries.from_full(full, self.order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries.from_full([-a for a in self.c], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = coeff(s)
        return PowerSeries.from_full([s * a for a in self.c], self.order)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def dilate(self, lam):
        """``z -> f(lam z)``."""
        lam = coeff(lam)
        return PowerSeries.from_full([a * lam**k for k, a in enumerate(self.c)], self.order)

    def shift_down(self):
        """``(f - c_0) / z``; the result has order N-1."""
        return PowerSeries.from_full(self.c[1:], self.order - 1)

    def shift_up(self):
        """``z f``; the result has order N+1."""
        return PowerSeries.from_full((Fraction(0),) + self.c, self.order + 1)

    def to_json(self):
        obj = {"kind": "ps1", "order": self.order}
        obj["coeffs"] = {str(k): gaussian.to_json(a) for k, a in enumerate(self.c) if a}
        return obj

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        if obj.get("kind") != "ps1":
            raise ValueError(f"expected kind 'ps1', got {obj.get('kind')!r}")
        order = int(obj["order"])
        full = [Fraction(0)] * (order + 1)
        for k, c in obj.get("coeffs", {}).items():
            k = int(k)
            if not 0 <= k <= order:
                raise ValueError(f"degree {k} outside 0..{order}")
            full[k] = gaussian.from_json(c)
        return cls.from_full(full, order)


def ps_product(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    f._same(g)
    n = f.order
    out = [Fraction(0)] * (n + 1)
    for i, a in enumerate(f.c):
        if not a:
            continue
        for j in range(0, n - i + 1):
            b = g.c[j]
            if b:
                out[i + j] = out[i + j] + a * b
    return PowerSeries.from_full(out, n)


def ps_power(f: PowerSeries, k: int) -> PowerSeries:
    out = PowerSeries.constant(1, f.order)
    for _ in range(k):
        out = ps_product(out, f)
    return out


def ps_compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """``f(g(z))`` by Horner's rule; ``g`` must have zero constant term."""
    f._same(g)
    if g.const:
        raise ValueError("ps_compose needs g with zero constant term")
    n = f.order
    out = PowerSeries.constant(f.c[n], n)
    for k in range(n - 1, -1, -1):
        out = ps_product(out, g) + f.c[k]
    return out


def ps_comp_inverse(f: PowerSeries) -> PowerSeries:
    """``g`` with ``f(g(z)) = g(f(z)) = z`` (requires ``c_0 = 0``, ``c_1 != 0``)."""
    if f.const:
        raise ValueError("ps_comp_inverse needs zero constant term")
    if f.order < 1 or not f[1]:
        raise ValueError("no compositional inverse: linear coefficient is zero")
    n = f.order
    inv1 = 1 / f[1]
    g = PowerSeries([inv1], n)
    z = PowerSeries.z(n)
    # each pass fixes one more coefficient of g
    for _ in range(n - 1):
        g = g + (z - ps_compose(f, g)).scale(inv1)
    return g


def ps_invert_unit(f: PowerSeries) -> PowerSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if f.const != 1:
        raise ValueError("ps_invert_unit needs constant term 1")
    n = f.order
    out = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if f.c[j]:
                acc = acc + f.c[j] * out[k - j]
        out[k] = -acc
    return PowerSeries.from_full(out, n)


def ps_divide(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """``f / g`` for ``g`` with nonzero constant term."""
    if not g.const:
        raise ZeroDivisionError("divisor has zero constant term")
    return ps_product(f, ps_invert_unit(g.scale(1 / g.const))).scale(1 / g.const)


def series_from_json(obj):
    """Dispatch on ``kind``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj.get("kind")
    if kind == "nc2":
        return NcSeries.from_json(obj)
    if kind == "ps1":
        return PowerSeries.from_json(obj)
    raise ValueError(f"unknown series kind {kind!r}")
