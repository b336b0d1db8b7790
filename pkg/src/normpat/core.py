"""Entry patterns, 0-1 matrices and the structural operations on them.

A pattern of order ``n`` is stored as a restricted-growth string of length
``n*n`` in row-major order: the first cell has class 0 and every new class
gets the next unused identifier.  Two grids that differ only by renaming
their entries therefore produce the same :class:`Pattern`.

0-1 matrices are stored as one integer bitmask per row (bit ``j`` is column
``j``), so products reduce to ``popcount(row_p & row_q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError, MalformedInputError

MAX_ORDER = 32


def relabel(values: Iterable[Hashable]) -> tuple[int, ...]:
    """Rename values to first-occurrence order (0, 1, 2, ...)."""
    mapping: dict = {}
    out = []
    for v in values:
        label = mapping.get(v)
        if label is None:
            label = mapping[v] = len(mapping)
        out.append(label)
    return tuple(out)


def is_restricted_growth(cells: Sequence[int]) -> bool:
    top = -1
    for v in cells:
        if v < 0 or v > top + 1:
            return False
        if v > top:
            top = v
    return True


def _check_order(n: int) -> None:
    if n < 1:
        raise DomainError(f"order must be positive, got {n}")
    if n > MAX_ORDER:
        raise CapacityError(f"order {n} exceeds the hard cap of {MAX_ORDER}")


@dataclass(frozen=True)
class Pattern:
    """An entry pattern: a set partition of the cells of an n x n grid."""

    order: int
    cells: tuple[int, ...]
    class_count: int = field(init=False, compare=False)

    def __post_init__(self):
        _check_order(self.order)
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        if len(cells) != self.order * self.order:
            raise MalformedInputError(
                f"expected {self.order * self.order} cells, got {len(cells)}"
            )
        if not is_restricted_growth(cells):
            raise DomainError("cells must be a restricted-growth string")
        object.__setattr__(self, "class_count", max(cells) + 1)

    def cell(self, i: int, j: int) -> int:
        return self.cells[i * self.order + j]

    def rows(self) -> list[tuple[int, ...]]:
        n = self.order
        return [self.cells[i * n:(i + 1) * n] for i in range(n)]

    def class_sizes(self) -> list[int]:
        sizes = [0] * self.class_count
        for v in self.cells:
            sizes[v] += 1
        return sizes

    def __str__(self):
        return "\n".join(" ".join(f"x{v}" for v in row) for row in self.rows())


def pattern_from_cells(n: int, values: Sequence[Hashable]) -> Pattern:
    """Build a pattern from ``n*n`` arbitrary row-major labels."""
    if len(values) != n * n:
        raise MalformedInputError(f"expected {n * n} cells, got {len(values)}")
    return Pattern(n, relabel(values))


def pattern_from_labels(rows: Sequence[Sequence[Hashable]]) -> Pattern:
    """Build a pattern from a square grid of arbitrary tokens.

    Equal tokens share a class; classes are numbered by first occurrence
    in row-major order.
    """
    n = len(rows)
    if n == 0:
        raise MalformedInputError("empty grid")
    flat = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedInputError(
                f"row {i} has {len(row)} entries, expected {n}", line=i + 1
            )
        flat.extend(row)
    return pattern_from_cells(n, flat)


def is_symmetric(p: Pattern) -> bool:
    n = p.order
    c = p.cells
    return all(c[i * n + j] == c[j * n + i] for i in range(n) for j in range(i + 1, n))


def transpose_pattern(p: Pattern) -> Pattern:
    n = p.order
    c = p.cells
    return Pattern(n, relabel(c[j * n + i] for i in range(n) for j in range(n)))


def _check_perm(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise DomainError(f"{perm} is not a permutation of 0..{n - 1}")
    return perm


def invert_perm(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return tuple(inv)


def permute_pattern(p: Pattern, perm: Sequence[int]) -> Pattern:
    """Move cell (i, j) to (perm[i], perm[j]) and relabel."""
    n = p.order
    inv = invert_perm(_check_perm(perm, n))
    c = p.cells
    return Pattern(n, relabel(c[inv[a] * n + inv[b]] for a in range(n) for b in range(n)))


def merge_classes(p: Pattern, groups: Iterable[Iterable[int]]) -> Pattern:
    """Identify all classes inside each group (specialize x_i := x_j)."""
    target = {}
    for g, group in enumerate(groups):
        for cls in group:
            if cls in target or not 0 <= cls < p.class_count:
                raise DomainError(f"groups must partition 0..{p.class_count - 1}")
            target[cls] = g
    if len(target) != p.class_count:
        raise DomainError(f"groups must partition 0..{p.class_count - 1}")
    return Pattern(p.order, relabel(target[v] for v in p.cells))


def restricted_growth_strings(length: int, max_classes: int | None = None) -> Iterator[tuple[int, ...]]:
    """All restricted-growth strings of the given length, in lexicographic order."""
    if length == 0:
        yield ()
        return
    limit = length if max_classes is None else max_classes
    seq = [0] * length
    tops = [0] * length  # tops[t] = max(seq[:t+1])

    def rec(t):
        if t == length:
            yield tuple(seq)
            return
        top = tops[t - 1]
        for v in range(min(top + 2, limit)):
            seq[t] = v
            tops[t] = top if v <= top else v
            yield from rec(t + 1)

    yield from rec(1)


def all_patterns(n: int, max_classes: int | None = None) -> Iterator[Pattern]:
    for cells in restricted_growth_strings(n * n, max_classes):
        yield Pattern(n, cells)


# -- 0-1 matrices -------------------------------------------------------------


@dataclass(frozen=True)
class BinaryMatrix:
    """An n x n 0-1 matrix, one bitmask per row."""

    order: int
    rows: tuple[int, ...]

    def __post_init__(self):
        _check_order(self.order)
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.order:
            raise MalformedInputError(f"expected {self.order} rows, got {len(rows)}")
        full = (1 << self.order) - 1
        if any(r & ~full or r < 0 for r in rows):
            raise DomainError("row bitmask has bits outside the matrix")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BinaryMatrix":
        n = len(entries)
        rows = []
        for i, row in enumerate(entries):
            if len(row) != n:
                raise MalformedInputError(f"row {i} has {len(row)} entries, expected {n}")
            mask = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise DomainError(f"entry ({i},{j}) is {v!r}, not 0 or 1")
                if v:
                    mask |= 1 << j
            rows.append(mask)
        return cls(n, tuple(rows))

    @classmethod
    def from_cells(cls, n: int, positions: Iterable[int]) -> "BinaryMatrix":
        """Matrix with ones at the given row-major cell indices."""
        rows = [0] * n
        for t in positions:
            rows[t // n] |= 1 << (t % n)
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "BinaryMatrix":
        return cls(n, (0,) * n)

    @classmethod
    def ones(cls, n: int) -> "BinaryMatrix":
        return cls(n, ((1 << n) - 1,) * n)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def columns(self) -> tuple[int, ...]:
        n = self.order
        cols = [0] * n
        for i, r in enumerate(self.rows):
            bit = 1 << i
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= bit
                r ^= low
        return tuple(cols)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.order, self.columns())

    def to_lists(self) -> list[list[int]]:
        n = self.order
        return [[(r >> j) & 1 for j in range(n)] for r in self.rows]

    def cell_mask(self) -> int:
        """All ones as one n*n-bit integer (bit i*n+j for entry (i, j))."""
        n = self.order
        mask = 0
        for i, r in enumerate(self.rows):
            mask |= r << (i * n)
        return mask

    def __add__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if other.order != self.order:
            raise DomainError("order mismatch")
        if any(a & b for a, b in zip(self.rows, other.rows)):
            raise DomainError("sum of overlapping 0-1 matrices is not 0-1")
        return BinaryMatrix(self.order, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in row) for row in self.to_lists())


def direct_sum(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    shift = a.order
    return BinaryMatrix(a.order + b.order, a.rows + tuple(r << shift for r in b.rows))


def pad(b: BinaryMatrix, n: int) -> BinaryMatrix:
    """``b`` followed by a zero block so the result has order ``n``."""
    if n < b.order:
        raise DomainError(f"cannot pad order {b.order} down to {n}")
    return BinaryMatrix(n, b.rows + (0,) * (n - b.order))


def product_counts(a_rows: Sequence[int], b_cols: Sequence[int]) -> list[list[int]]:
    """Integer product given rows of the left factor and columns of the right."""
    return [[(r & c).bit_count() for c in b_cols] for r in a_rows]


def matmul(a: BinaryMatrix, b: BinaryMatrix) -> list[list[int]]:
    if a.order != b.order:
        raise DomainError("order mismatch")
    return product_counts(a.rows, b.columns())


def ones_count(b: BinaryMatrix) -> int:
    return sum(r.bit_count() for r in b.rows)


@dataclass(frozen=True)
class RowColProfile:
    r: tuple[int, ...]
    c: tuple[int, ...]
    r_off: tuple[int, ...]
    c_off: tuple[int, ...]


def row_col_profile(b: BinaryMatrix) -> RowColProfile:
    cols = b.columns()
    diag = [b.entry(i, i) for i in range(b.order)]
    r = tuple(x.bit_count() for x in b.rows)
    c = tuple(x.bit_count() for x in cols)
    return RowColProfile(
        r, c, tuple(x - d for x, d in zip(r, diag)), tuple(x - d for x, d in zip(c, diag))
    )


def coefficient_matrix(p: Pattern, i: int) -> BinaryMatrix:
    """0-1 indicator of the cells of class ``i``."""
    if not 0 <= i < p.class_count:
        raise DomainError(f"class {i} out of range 0..{p.class_count - 1}")
    return _coefficient_matrices(p)[i]


def coefficient_matrices(p: Pattern) -> list[BinaryMatrix]:
    return _coefficient_matrices(p)


def _coefficient_matrices(p: Pattern) -> list[BinaryMatrix]:
    n = p.order
    rows = [[0] * n for _ in range(p.class_count)]
    for t, v in enumerate(p.cells):
        rows[v][t // n] |= 1 << (t % n)
    return [BinaryMatrix(n, tuple(r)) for r in rows]


def indicator_pattern(b: BinaryMatrix) -> Pattern:
    """The 2-class (or 1-class) pattern separating the ones of ``b`` from its zeros."""
    n = b.order
    return pattern_from_cells(n, [b.entry(i, j) for i in range(n) for j in range(n)])
