"""Integer partitions as multiplicity vectors, and bounded compositions.

A partition of n with a_k parts equal to k is stored as the vector
(a_1, ..., a_r) with a_r > 0 (empty for n = 0).  All the
partition-indexed sums in this package consume exactly this shape, so no
part-list conversion happens anywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "PartitionMultiplicity",
    "bounded_compositions",
    "nested_index_set",
    "partitions",
]


@dataclass(frozen=True)
class PartitionMultiplicity:
    """A partition encoded by multiplicities: a_k parts equal to k."""

    mults: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a < 0 for a in self.mults):
            raise ValueError("multiplicities must be nonnegative")
        if self.mults and self.mults[-1] == 0:
            raise ValueError("trailing multiplicity must be positive")

    @property
    def n(self) -> int:
        """The partitioned integer, sum of k * a_k."""
        return sum(k * a for k, a in enumerate(self.mults, start=1))

    @property
    def length(self) -> int:
        """Number of parts, sum of a_k."""
        return sum(self.mults)

    def parts(self) -> tuple[int, ...]:
        """Parts in weakly decreasing order."""
        out: list[int] = []
        for k in range(len(self.mults), 0, -1):
            out.extend([k] * self.mults[k - 1])
        return tuple(out)

    def __str__(self) -> str:
        inner = " ".join(
            f"{k}^{a}" if a > 1 else str(k)
            for k, a in enumerate(self.mults, start=1)
            if a
        )
        return f"({inner})"


def _part_lists(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _part_lists(n - first, first):
            yield (first,) + rest


def partitions(n: int) -> list[PartitionMultiplicity]:
    """All partitions of n, in ascending lexicographic order of mult vectors.

    The order is total and documented so that every partition-indexed
    output of this package is reproducible byte for byte.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for parts in _part_lists(n, n):
        mults = [0] * (parts[0] if parts else 0)
        for p in parts:
            mults[p - 1] += 1
        out.append(PartitionMultiplicity(tuple(mults)))
    out.sort(key=lambda lam: lam.mults)
    return out


def bounded_compositions(
    total: int, bounds: Iterable[int]
) -> Iterator[tuple[int, ...]]:
    """All tuples (i_1, ..., i_r) with 0 <= i_k <= bounds[k] and sum = total.

    Yields nothing when ``total`` is negative or exceeds the sum of the
    bounds; the empty tuple when r = 0 and total = 0.
    """
    limits = tuple(bounds)
    if any(b < 0 for b in limits):
        raise ValueError("bounds must be nonnegative")
    if total < 0:
        return
    # suffix sums let each slot prune values that cannot be completed
    suffix = [0] * (len(limits) + 1)
    for i in range(len(limits) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + limits[i]

    def rec(idx: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if idx == len(limits):
            if remaining == 0:
                yield ()
            return
        low = max(0, remaining - suffix[idx + 1])
        high = min(limits[idx], remaining)
        for value in range(low, high + 1):
            for rest in rec(idx + 1, remaining - value):
                yield (value,) + rest

    yield from rec(0, total)


def nested_index_set(n: int) -> list[tuple[PartitionMultiplicity, int]]:
    """All pairs (partition of n, marked part j), j = 0 or a_j > 0.

    The j = 0 pair is always present; the remaining pairs mark one of the
    distinct part sizes occurring in the partition.
    """
    out: list[tuple[PartitionMultiplicity, int]] = []
    for lam in partitions(n):
        out.append((lam, 0))
        for k, a in enumerate(lam.mults, start=1):
            if a:
                out.append((lam, k))
    return out
