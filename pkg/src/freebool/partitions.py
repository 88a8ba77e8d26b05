"""Set partitions of {1..n}: interval, non-crossing and even-block families.

Partitions are immutable :class:`SetPartition` values whose blocks are sorted
tuples, listed by increasing minimum.  Every enumerator yields partitions in
lexicographic order of their restricted growth strings (element ``i`` gets the
index of its block, blocks numbered by first appearance), so
``enumerate_interval_partitions(2)`` gives ``{{1,2}}`` before ``{{1},{2}}``.
"""

from __future__ import annotations

import functools
from math import comb
from dataclasses import dataclass

ORACLE_CAP = 14


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SetPartition:
    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        seen = [x for b in blocks for x in b]
        if any(not b for b in blocks):
            raise ValueError("empty block")
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{self.n}")

    @classmethod
    def from_rgs(cls, rgs):
        groups = {}
        for i, label in enumerate(rgs, start=1):
            groups.setdefault(label, []).append(i)
        return cls(len(rgs), tuple(tuple(g) for g in groups.values()))

    @classmethod
    def zero(cls, n):
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def one(cls, n):
        return cls(n, (tuple(range(1, n + 1)),))

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, i):
        for b in self.blocks:
            if i in b:
                return b
        raise ValueError(f"{i} not in ground set")

    def block_sizes(self):
        return [len(b) for b in self.blocks]

    def to_json(self):
        return [list(b) for b in self.blocks]

    # predicates ----------------------------------------------------------
    def is_interval(self):
        return all(b[-1] - b[0] + 1 == len(b) for b in self.blocks)

    def is_noncrossing(self):
        return is_noncrossing(self.blocks)

    def has_even_blocks(self):
        return all(len(b) % 2 == 0 for b in self.blocks)


def is_noncrossing(blocks) -> bool:
    """No a<b<c<d with {a,c} in one block and {b,d} in a different one."""
    label = {x: k for k, b in enumerate(blocks) for x in b}
    n = len(label)
    lab = [label[i] for i in range(1, n + 1)]
    for a in range(n):
        for b in range(a + 1, n):
            if lab[b] == lab[a]:
                continue
            for c in range(b + 1, n):
                if lab[c] != lab[a]:
                    continue
                for d in range(c + 1, n):
                    if lab[d] == lab[b]:
                        return False
    return True


def _check_n(n, cap=None):
    if n < 1:
        raise ValueError("ground set size must be >= 1")
    if cap is not None and n > cap:
        raise OracleCapExceeded(f"oracle size exceeded: n={n} > cap={cap}")


def enumerate_interval_partitions(n: int):
    """Yield Int(n); 2**(n-1) partitions, longest first block first."""
    _check_n(n)

    def rec(start):
        if start > n:
            yield ()
            return
        for end in range(n, start - 1, -1):
            for rest in rec(end + 1):
                yield (tuple(range(start, end + 1)),) + rest

    for blocks in rec(1):
        yield SetPartition(n, blocks)


def _nc_rgs(n, colors=None):
    """Restricted growth strings of non-crossing partitions, lexicographic.

    Keeps a stack of open blocks: element ``i`` may join any open block
    (closing every block opened after it) or start a new one.  With
    ``colors`` only same-colored blocks may be joined.
    """
    rgs = [0] * n

    def rec(i, stack, nblocks):
        if i == n:
            yield tuple(rgs)
            return
        for pos, b in enumerate(stack):
            if colors is not None and colors[b[1]] != colors[i]:
                continue
            rgs[i] = b[0]
            yield from rec(i + 1, stack[: pos + 1], nblocks)
        rgs[i] = nblocks
        yield from rec(i + 1, stack + [(nblocks, i)], nblocks + 1)

    yield from rec(0, [], 0)


def _rgs_blocks(rgs):
    groups = {}
    for i, label in enumerate(rgs, start=1):
        groups.setdefault(label, []).append(i)
    return tuple(tuple(g) for g in groups.values())


def enumerate_noncrossing_partitions(n: int, cap: int | None = ORACLE_CAP, colors=None):
    """Yield NC(n) (Catalan(n) partitions).

    ``colors`` (a length-n sequence) restricts to partitions whose blocks are
    monochromatic.  ``cap`` bounds ``n``; pass ``None`` to disable it.
    """
    _check_n(n, cap)
    if colors is not None and len(colors) != n:
        raise ValueError("colors must have length n")
    for rgs in _nc_rgs(n, colors):
        yield SetPartition(n, _rgs_blocks(rgs))


@functools.lru_cache(maxsize=None)
def noncrossing_blocks(n: int, colors: tuple | None = None) -> tuple:
    """Cached block tuples of NC(n) (optionally color-restricted) for repeated oracle sums."""
    _check_n(n)
    return tuple(_rgs_blocks(r) for r in _nc_rgs(n, colors))


@functools.lru_cache(maxsize=None)
def interval_blocks(n: int) -> tuple:
    return tuple(p.blocks for p in enumerate_interval_partitions(n))


def enumerate_noncrossing_even_partitions(n: int, cap: int | None = ORACLE_CAP):
    """Yield NCE(n): non-crossing partitions with all blocks of even size (n even)."""
    for p in enumerate_noncrossing_partitions(n, cap):
        if p.has_even_blocks():
            yield p


def rotate_inverse(p: SetPartition) -> SetPartition:
    """Apply gamma^{-1}, where gamma sends i to i+1 mod n, to every block."""
    n = p.n
    return SetPartition(n, tuple(tuple(n if x == 1 else x - 1 for x in b) for b in p.blocks))


def double_partition(p: SetPartition) -> SetPartition:
    """Interval partition of 2n whose k-th interval has twice the length of p's."""
    if not p.is_interval():
        raise ValueError("double_partition needs an interval partition")
    blocks = []
    start = 1
    for b in p.blocks:
        length = 2 * len(b)
        blocks.append(tuple(range(start, start + length)))
        start += length
    return SetPartition(2 * p.n, tuple(blocks))


def coarser_than(p: SetPartition, q: SetPartition) -> bool:
    """``p <= q`` in reverse refinement: every block of p sits inside a block of q."""
    if p.n != q.n:
        raise ValueError(f"ground sets differ: {p.n} vs {q.n}")
    label = {}
    for k, b in enumerate(q.blocks):
        for x in b:
            label[x] = k
    return all(len({label[x] for x in b}) == 1 for b in p.blocks)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)
