"""Hypothesis strategies for small exact inputs."""

from fractions import Fraction

from hypothesis import strategies as st

from freebool.diagonal import DeterminingPair
from freebool.series import NcSeries, PowerSeries
from freebool.transforms import AtomicMeasure
from freebool.words import words_up_to

small = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
small_pos = st.builds(Fraction, st.integers(1, 9), st.integers(1, 9))
small_nonzero = small.filter(bool)


@st.composite
def power_series(draw, order, first_nonzero=False):
    cs = [draw(small) for _ in range(order)]
    if first_nonzero:
        cs[0] = draw(small_nonzero)
    return PowerSeries(cs, order)


@st.composite
def nc_series(draw, order, alphabet="1*"):
    return NcSeries(order, {w: draw(small) for w in words_up_to(order, alphabet)}, 0, alphabet)


@st.composite
def pairs(draw, n, nonzero_first=False):
    a = [draw(small) for _ in range(n)]
    b = [draw(small) for _ in range(n)]
    if nonzero_first:
        a[0], b[0] = draw(small_nonzero), draw(small_nonzero)
    return DeterminingPair(tuple(a), tuple(b))


@st.composite
def measures(draw, max_atoms=3, positive_mean=False):
    k = draw(st.integers(1, max_atoms))
    pos = draw(st.lists(st.builds(Fraction, st.integers(0, 9), st.integers(1, 4)), min_size=k, max_size=k, unique=True))
    raw = [draw(st.integers(1, 9)) for _ in range(k)]
    total = sum(raw)
    sigma = AtomicMeasure(tuple((p, Fraction(r, total)) for p, r in zip(pos, raw)))
    if positive_mean and not sigma.mean:
        sigma = AtomicMeasure(tuple((p + 1, w) for p, w in sigma.atoms))
    return sigma
