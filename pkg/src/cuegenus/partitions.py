"""Integer partitions, Young diagram contents, and content-based sums."""

from __future__ import annotations

from typing import Iterator, Sequence


class Partition:
    """A weakly decreasing sequence of positive integers.

    Identified with the Young diagram whose i-th row (1-based) contains
    ``parts[i-1]`` cells.  The empty partition is allowed and represents
    the unique diagram with zero cells.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[int] = ()):
        parts = tuple(parts)
        prev = None
        for p in parts:
            if not isinstance(p, int) or p < 1:
                raise ValueError("parts must be positive integers")
            if prev is not None and p > prev:
                raise ValueError("parts must be weakly decreasing")
            prev = p
        self.parts = parts

    @property
    def size(self) -> int:
        """Number of cells."""
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        """Transpose of the diagram (rows become columns)."""
        if not self.parts:
            return Partition()
        counts = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                counts[j] += 1
        return Partition(counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"


def enumerate_partitions(d: int, max_rows: int | None = None) -> Iterator[Partition]:
    """Yield the partitions of d with at most max_rows rows.

    The order is lexicographically decreasing: (d) first, then (d-1, 1),
    and so on down to the all-ones partition when max_rows permits it.

    Convention: d = 0 yields nothing, even though partition_count(0) == 1
    counts the empty partition; callers that need the d = 0 term handle it
    explicitly (the empty partition itself is constructible and has content
    polynomial 1).
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if max_rows is not None and max_rows < 1:
        raise ValueError("max_rows must be positive")
    if d == 0:
        return
    rows_cap = d if max_rows is None else min(max_rows, d)

    def gen(remaining: int, largest: int, rows_left: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield Partition(prefix)
            return
        if rows_left == 0:
            return
        # smallest feasible first part so the rest still fits in rows_left rows
        lo = -(-remaining // rows_left)
        for first in range(min(remaining, largest), lo - 1, -1):
            yield from gen(remaining - first, first, rows_left - 1, prefix + (first,))

    yield from gen(d, d, rows_cap, ())


_pcounts = [1]


def partition_count(d: int) -> int:
    """Number of partitions of d, via the pentagonal number recurrence.

    partition_count(0) == 1 (the empty partition); see the d = 0 note on
    enumerate_partitions.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    while len(_pcounts) <= d:
        n = len(_pcounts)
        total = 0
        k = 1
        while True:
            p1 = n - k * (3 * k - 1) // 2
            if p1 < 0:
                break
            sign = -1 if k % 2 == 0 else 1
            total += sign * _pcounts[p1]
            p2 = p1 - k
            if p2 >= 0:
                total += sign * _pcounts[p2]
            k += 1
        _pcounts.append(total)
    return _pcounts[d]


def contents(lam: Partition) -> list[int]:
    """Cell contents (column index minus row index), in row-major order.

    Row i (1-based) of length p contributes 1-i, 2-i, ..., p-i.
    """
    out: list[int] = []
    for i, p in enumerate(lam.parts):
        out.extend(range(-i, p - i))
    return out


def content_polynomial(lam: Partition, x):
    """Product of (x + c) over all cell contents c of lam.

    Exact for int or Fraction x; the empty partition gives 1.  A zero
    result is legitimate when x is a negative integer hitting a content.
    """
    result = x ** 0
    for i, p in enumerate(lam.parts):
        for c in range(-i, p - i):
            result *= x + c
    return result


def complete_homogeneous(r: int, values: Sequence) -> int:
    """Complete homogeneous symmetric polynomial h_r of the given values.

    Sum over weakly increasing index tuples of length r of the products;
    h_0 = 1 (even on an empty value list), and r >= 1 on an empty list is 0.

    Computed by the prefix dynamic program
    h_r(x_1..x_k) = h_r(x_1..x_{k-1}) + x_k * h_{r-1}(x_1..x_k),
    which the ascending in-place update below realizes in O(r * len) exact
    operations.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    dp = [0] * (r + 1)
    dp[0] = 1
    for v in values:
        for j in range(1, r + 1):
            dp[j] += v * dp[j - 1]
    return dp[r]


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """True iff lam <= mu in dominance order (prefix sums, zero padded).

    Both partitions must have the same size.
    """
    if lam.size != mu.size:
        raise ValueError("dominance order compares partitions of equal size")
    a, b = lam.parts, mu.parts
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa > sb:
            return False
    return True
