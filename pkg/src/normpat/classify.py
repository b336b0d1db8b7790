"""Enumeration and classification of normal 0-1 matrices by number of ones."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb

from .canon import BinaryKey, binary_key
from .core import BinaryMatrix
from .errors import CapacityError, DomainError
from .normality import is_normal_binary

ENUMERATION_GUARD = 10**7


@dataclass(frozen=True)
class BinaryClass:
    """A permutation-similarity class of 0-1 matrices."""

    key: BinaryKey
    representative: BinaryMatrix
    member_count: int


@dataclass(frozen=True)
class ClassificationReport:
    order: int
    ones_count: int
    total_matrices: int
    classes: tuple[BinaryClass, ...]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "ones_count": self.ones_count,
            "total_matrices": self.total_matrices,
            "class_count": len(self.classes),
            "classes": [
                {
                    "representative": c.representative.to_lists(),
                    "witness": list(c.key.witness),
                    "member_count": c.member_count,
                }
                for c in self.classes
            ],
        }


def _guard(n: int, m: int) -> None:
    if n < 1:
        raise DomainError("order must be positive")
    if not 0 <= m <= n * n:
        raise DomainError(f"ones count must lie in [0, {n * n}]")
    if comb(n * n, m) > ENUMERATION_GUARD:
        raise CapacityError(
            f"C({n * n}, {m}) = {comb(n * n, m)} placements exceeds the guard of {ENUMERATION_GUARD}"
        )


def brute_force_normal(n: int, m: int):
    """Every normal 0-1 matrix with m ones, by filtering all placements."""
    _guard(n, m)
    for cells in combinations(range(n * n), m):
        b = BinaryMatrix.from_cells(n, cells)
        if is_normal_binary(b):
            yield b


def classify_normal_binary(n: int, m: int) -> ClassificationReport:
    buckets: dict[tuple, list] = {}
    total = 0
    for b in brute_force_normal(n, m):
        total += 1
        key = binary_key(b)
        entry = buckets.get(key.entries)
        if entry is None:
            buckets[key.entries] = [key, 1]
        else:
            entry[1] += 1
    classes = tuple(
        BinaryClass(key, key.matrix(), count)
        for _, (key, count) in sorted(buckets.items())
    )
    return ClassificationReport(n, m, total, classes)


def binary_orbit_size(b: BinaryMatrix) -> int:
    """Number of distinct matrices permutation similar to ``b``."""
    n = b.order
    rows = b.rows
    return len({
        tuple((rows[tau[a]] >> tau[c]) & 1 for a in range(n) for c in range(n))
        for tau in permutations(range(n))
    })


def _normal_dfs(n: int, m: int):
    """Normal 0-1 matrices with m ones in lexicographic order of their cell sets.

    Row-major backtracking; when a row closes, partial column inner products
    must stay within the (now final) row inner products, and the rows still
    to come must be able to make up the difference.
    """
    rows = [0] * n
    cols = [0] * n
    n2 = n * n

    def row_closed(r: int) -> bool:
        remaining = n - 1 - r
        for p in range(r + 1):
            rp, cp = rows[p], cols[p]
            for q in range(p, r + 1):
                target = (rp & rows[q]).bit_count()
                have = (cp & cols[q]).bit_count()
                if have > target or target - have > remaining:
                    return False
        return True

    def rec(t: int, left: int):
        if left > n2 - t:
            return
        if t == n2:
            yield BinaryMatrix(n, tuple(rows))
            return
        i, j = divmod(t, n)
        last = j == n - 1
        if left:
            rows[i] |= 1 << j
            cols[j] |= 1 << i
            if not last or row_closed(i):
                yield from rec(t + 1, left - 1)
            rows[i] ^= 1 << j
            cols[j] ^= 1 << i
        if not last or row_closed(i):
            yield from rec(t + 1, left)

    yield from rec(0, m)


@lru_cache(maxsize=None)
def _catalog(n: int, m: int) -> tuple[BinaryMatrix, ...]:
    return tuple(_normal_dfs(n, m))


def catalog_for_occupancy(n: int, m: int) -> list[BinaryMatrix]:
    """All normal 0-1 matrices of order n with exactly m ones, not deduplicated."""
    _guard(n, m)
    return list(_catalog(n, m))
