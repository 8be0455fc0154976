"""Integer partitions as they index nilpotent orbits."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence


class Partition(tuple):
    """A partition r_1 >= r_2 >= ... >= r_t > 0, stored as a tuple of parts."""

    def __new__(cls, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,2,1"``; parts are sorted, so ``"1,3,2"`` is accepted too."""
        parts = [int(p) for p in text.replace(" ", "").split(",") if p]
        return cls(sorted(parts, reverse=True))

    def __repr__(self) -> str:
        return f"Partition({','.join(map(str, self))})"

    def __str__(self) -> str:
        return ",".join(map(str, self))

    @property
    def n(self) -> int:
        return sum(self)

    def dual(self) -> "Partition":
        if not self:
            return Partition(())
        return Partition([sum(1 for p in self if p > i) for i in range(self[0])])

    def orbit_dim(self) -> int:
        """Dimension of the nilpotent GL_n-orbit with these Jordan block sizes."""
        return self.n ** 2 - sum(q * q for q in self.dual())

    def collapse(self) -> "Partition":
        """(r_1, r_2, r_3, ...) -> (r_1 + r_2 - 1, r_3, ...), a partition of n - 1."""
        if len(self) == 1:
            rest = [self[0] - 1] if self[0] > 1 else []
            return Partition(rest)
        merged = [self[0] + self[1] - 1, *self[2:]]
        return Partition(sorted(merged, reverse=True))

    def s_values(self) -> list[int]:
        """s(i) for i = 1..n: the index of the part whose prefix sum first reaches i."""
        out = []
        total = 0
        for j, part in enumerate(self, start=1):
            for _ in range(part):
                out.append(j)
            total += part
        return out

    def is_orthogonal(self) -> bool:
        """Even parts occur with even multiplicity."""
        return all(self.count(p) % 2 == 0 for p in set(self) if p % 2 == 0)

    def is_very_even(self) -> bool:
        return bool(self) and all(p % 2 == 0 and self.count(p) % 2 == 0 for p in set(self))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first, *rest))
    return tuple(out)


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order, starting with (n)."""
    for parts in _partitions(n, n):
        yield Partition(parts)


def jordan_type(block_ranks: Sequence[int]) -> Partition:
    """Jordan type of a nilpotent map from rank(N^0), rank(N^1), ... (ending in 0).

    The number of blocks of size >= j is rank(N^{j-1}) - rank(N^j).
    """
    ranks = list(block_ranks)
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts = []
    for j, count in enumerate(at_least, start=1):
        nxt = at_least[j] if j < len(at_least) else 0
        parts.extend([j] * (count - nxt))
    return Partition(sorted(parts, reverse=True))
