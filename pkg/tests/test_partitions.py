import itertools

import pytest
from hypothesis import given, strategies as st

from freebool.partitions import (
    OracleCapExceeded,
    SetPartition,
    catalan,
    coarser_than,
    double_partition,
    enumerate_interval_partitions,
    enumerate_noncrossing_even_partitions,
    enumerate_noncrossing_partitions,
    is_noncrossing,
    noncrossing_blocks,
    rotate_inverse,
)


def P(n, *blocks):
    return SetPartition(n, tuple(tuple(b) for b in blocks))


def _all_partitions(n):
    # brute force through restricted growth strings
    for rgs in itertools.product(range(n), repeat=n):
        if rgs[0] == 0 and all(rgs[i] <= max(rgs[:i]) + 1 for i in range(1, n)):
            yield SetPartition.from_rgs(rgs)


def test_interval_small_cases():
    assert list(enumerate_interval_partitions(1)) == [SetPartition.one(1)]
    assert list(enumerate_interval_partitions(2)) == [P(2, (1, 2)), P(2, (1,), (2,))]
    assert len(list(enumerate_interval_partitions(3))) == 4


@pytest.mark.parametrize("n", range(1, 8))
def test_nc_counts_match_brute_force(n):
    got = list(enumerate_noncrossing_partitions(n))
    assert len(got) == catalan(n) == len(set(got))
    brute = {p for p in _all_partitions(n) if p.is_noncrossing()}
    assert set(got) == brute
    assert got[0] == SetPartition.one(n)


def test_interval_count_is_power_of_two():
    for n in range(1, 9):
        assert len(list(enumerate_interval_partitions(n))) == 2 ** (n - 1)


def test_crossing_example():
    assert not is_noncrossing([(1, 3), (2, 4)])
    assert not P(4, (1, 3), (2, 4)).is_noncrossing()


def test_nce4():
    got = set(enumerate_noncrossing_even_partitions(4))
    assert got == {P(4, (1, 2, 3, 4)), P(4, (1, 2), (3, 4)), P(4, (1, 4), (2, 3))}


def test_colored_enumeration_is_monochromatic():
    colors = ("a", "b", "a", "b", "a")
    got = noncrossing_blocks(5, colors)
    for blocks in got:
        for b in blocks:
            assert len({colors[i - 1] for i in b}) == 1
    every = [p.blocks for p in enumerate_noncrossing_partitions(5)]
    mono = [bl for bl in every if all(len({colors[i - 1] for i in b}) == 1 for b in bl)]
    assert sorted(got) == sorted(mono)


def test_rotate_inverse():
    assert rotate_inverse(P(4, (1, 3), (2,), (4,))) == P(4, (2, 4), (1,), (3,))
    assert rotate_inverse(SetPartition.one(5)) == SetPartition.one(5)
    assert rotate_inverse(SetPartition.zero(5)) == SetPartition.zero(5)


@given(st.integers(1, 7), st.data())
def test_rotation_preserves_noncrossing(n, data):
    parts = list(enumerate_noncrossing_partitions(n))
    p = data.draw(st.sampled_from(parts))
    q = p
    for _ in range(n):
        q = rotate_inverse(q)
        assert q.is_noncrossing()
    assert q == p


def test_double():
    assert double_partition(P(3, (1,), (2, 3))) == P(6, (1, 2), (3, 4, 5, 6))
    assert double_partition(SetPartition.one(3)) == SetPartition.one(6)
    assert double_partition(SetPartition.zero(2)) == P(4, (1, 2), (3, 4))


def test_coarser():
    for p in enumerate_noncrossing_partitions(4):
        assert coarser_than(SetPartition.zero(4), p)
        assert coarser_than(p, SetPartition.one(4))
    assert not coarser_than(P(3, (1, 3), (2,)), P(3, (1, 2), (3,)))


def test_cap():
    with pytest.raises(OracleCapExceeded):
        list(enumerate_noncrossing_partitions(15))
    with pytest.raises(OracleCapExceeded):
        list(enumerate_noncrossing_partitions(5, cap=4))


def test_bad_partition_rejected():
    with pytest.raises(ValueError):
        P(3, (1, 2))
