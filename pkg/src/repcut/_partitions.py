"""Set-partition enumeration in restricted-growth-string order."""

from __future__ import annotations

from typing import Iterator, Sequence, TypeVar

T = TypeVar("T")


def restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All RGS arrays of length n in lexicographic order.

    a[0] = 0 and a[i] <= max(a[:i]) + 1; each array encodes one set
    partition by block index.
    """
    if n == 0:
        yield []
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i+1])
    while True:
        yield a.copy()
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def set_partitions(items: Sequence[T]) -> Iterator[tuple[tuple[T, ...], ...]]:
    """Partitions of items as block tuples, RGS (lexicographic) order.

    Blocks keep item order; block order follows first occurrence.
    """
    n = len(items)
    for rgs in restricted_growth_strings(n):
        count = (max(rgs) + 1) if rgs else 0
        blocks: list[list[T]] = [[] for _ in range(count)]
        for item, b in zip(items, rgs):
            blocks[b].append(item)
        yield tuple(tuple(b) for b in blocks)
