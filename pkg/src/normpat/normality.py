"""Normality oracles for 0-1 matrices and entry patterns.

Three exact oracles decide whether a pattern is normal and are used to check
each other:

* :func:`is_normal_lemma2` -- every coefficient matrix is normal and every
  pair satisfies ``A Bt + B At == At B + Bt A`` (the production oracle);
* :func:`is_normal_symbolic` -- expand ``A At - At A`` with the entries as
  indeterminates and test that every coefficient vanishes;
* :func:`is_normal_binary_assignments` -- every 0/1 assignment of the
  indeterminates gives a normal matrix.

:func:`is_normal_random_specialization` is a one-sided Monte Carlo check.
All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Sequence

from .core import (
    BinaryMatrix,
    Pattern,
    coefficient_matrices,
    row_col_profile,
)
from .errors import CapacityError, DomainError

MAX_SUBSET_CLASSES = 20
SPECIALIZATION_RANGE = 1000


# -- 0-1 matrices -------------------------------------------------------------


def _gram_equal(rows: Sequence[int], cols: Sequence[int]) -> bool:
    n = len(rows)
    for p in range(n):
        rp, cp = rows[p], cols[p]
        for q in range(p, n):
            if (rp & rows[q]).bit_count() != (cp & cols[q]).bit_count():
                return False
    return True


def is_normal_binary(b: BinaryMatrix) -> bool:
    """True iff ``B Bt == Bt B``."""
    return _gram_equal(b.rows, b.columns())


def _pair_ok(ar, ac, br, bc) -> bool:
    n = len(ar)
    for p in range(n):
        arp, brp, acp, bcp = ar[p], br[p], ac[p], bc[p]
        for q in range(p, n):
            left = (arp & br[q]).bit_count() + (brp & ar[q]).bit_count()
            right = (acp & bc[q]).bit_count() + (bcp & ac[q]).bit_count()
            if left != right:
                return False
    return True


def pair_condition(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    """True iff ``A Bt + B At == At B + Bt A``."""
    if a.order != b.order:
        raise DomainError(f"order mismatch: {a.order} vs {b.order}")
    return _pair_ok(a.rows, a.columns(), b.rows, b.columns())


def eq3_filter(b: BinaryMatrix) -> bool:
    """Row sums equal column sums, on and off the diagonal.

    Necessary for normality (the diagonal of ``B Bt == Bt B``), not sufficient.
    """
    prof = row_col_profile(b)
    return prof.r == prof.c and prof.r_off == prof.c_off


def eq3_partial_filter(n: int, assigned: Sequence[int]) -> bool:
    """Feasibility of the row-sum/column-sum balance for a partial pattern.

    ``assigned`` holds the class labels of the first ``len(assigned)`` cells
    in row-major order.  Returns False only when some class already has more
    cells in a column than its row can still receive (or vice versa), so
    that no completion can make its coefficient matrix normal.
    """
    if len(assigned) > n * n:
        raise DomainError("more cells than the grid holds")
    k = max(assigned, default=-1) + 1
    row_cnt = [[0] * k for _ in range(n)]
    col_cnt = [[0] * k for _ in range(n)]
    row_rem = [n] * n
    col_rem = [n] * n
    for t, v in enumerate(assigned):
        i, j = divmod(t, n)
        row_cnt[i][v] += 1
        col_cnt[j][v] += 1
        row_rem[i] -= 1
        col_rem[j] -= 1
    for p in range(n):
        for i in range(k):
            if col_cnt[p][i] > row_cnt[p][i] + row_rem[p]:
                return False
            if row_cnt[p][i] > col_cnt[p][i] + col_rem[p]:
                return False
    return True


# -- patterns -----------------------------------------------------------------


def is_normal_lemma2(p: Pattern) -> bool:
    """Coefficient-matrix criterion: each A_i normal and pairwise condition."""
    mats = coefficient_matrices(p)
    data = [(m.rows, m.columns()) for m in mats]
    for rows, cols in data:
        if not _gram_equal(rows, cols):
            return False
    for i in range(len(data)):
        ar, ac = data[i]
        for j in range(i + 1, len(data)):
            if not _pair_ok(ar, ac, *data[j]):
                return False
    return True


def _mono(a, b):
    return (a, b) if a <= b else (b, a)


def poly_product(x: Sequence[Sequence[Hashable]], y: Sequence[Sequence[Hashable]]) -> list[list[Counter]]:
    """Product of two matrices of indeterminates.

    Each result entry is a Counter mapping a degree-two monomial, written as
    a sorted label pair, to its coefficient.
    """
    inner = len(y)
    if any(len(row) != inner for row in x):
        raise DomainError("non-conformal matrix product")
    cols = len(y[0]) if inner else 0
    out = []
    for row in x:
        out_row = []
        for q in range(cols):
            c = Counter()
            for r in range(inner):
                c[_mono(row[r], y[r][q])] += 1
            out_row.append(c)
        out.append(out_row)
    return out


def transpose_grid(x: Sequence[Sequence[Hashable]]) -> list[list[Hashable]]:
    return [list(col) for col in zip(*x)] if x else []


@dataclass(frozen=True)
class CommutatorPolynomial:
    """Entries of ``A At - At A`` as integer quadratic forms.

    ``terms`` maps ``(p, q, (a, b))`` to the coefficient of ``x_a x_b`` at
    entry ``(p, q)``; zero coefficients are omitted.
    """

    order: int
    terms: dict

    def entry(self, p: int, q: int) -> dict:
        return {m: c for (i, j, m), c in self.terms.items() if i == p and j == q}

    def is_zero(self) -> bool:
        return not self.terms


def commutator_of_grid(grid: Sequence[Sequence[Hashable]]) -> dict:
    gt = transpose_grid(grid)
    left = poly_product(grid, gt)
    right = poly_product(gt, grid)
    terms = {}
    for p, (lrow, rrow) in enumerate(zip(left, right)):
        for q, (l, r) in enumerate(zip(lrow, rrow)):
            diff = Counter(l)
            diff.subtract(r)
            for m, c in diff.items():
                if c:
                    terms[(p, q, m)] = c
    return terms


def commutator(p: Pattern) -> CommutatorPolynomial:
    return CommutatorPolynomial(p.order, commutator_of_grid(p.rows()))


def is_normal_symbolic(p: Pattern) -> bool:
    return commutator(p).is_zero()


def is_normal_binary_assignments(p: Pattern) -> bool:
    """Every 0/1 assignment of the indeterminates yields a normal matrix."""
    k = p.class_count
    if k > MAX_SUBSET_CLASSES:
        raise CapacityError(f"{k} classes exceeds the subset-oracle limit of {MAX_SUBSET_CLASSES}")
    n = p.order
    mats = [m.rows for m in coefficient_matrices(p)]
    # small subsets first: non-normal patterns usually fail on singletons or pairs
    for size in range(1, k + 1):
        for subset in combinations(range(k), size):
            rows = [0] * n
            for i in subset:
                for r, bits in enumerate(mats[i]):
                    rows[r] |= bits
            if not is_normal_binary(BinaryMatrix(n, tuple(rows))):
                return False
    return True


def _int_commutator_zero(values: Sequence[Sequence[int]]) -> bool:
    n = len(values)
    cols = list(zip(*values))
    for p in range(n):
        for q in range(p, n):
            aat = sum(x * y for x, y in zip(values[p], values[q]))
            ata = sum(x * y for x, y in zip(cols[p], cols[q]))
            if aat != ata:
                return False
    return True


def is_normal_random_specialization(p: Pattern, trials: int = 10, seed: int = 0) -> bool:
    """Substitute random integers for the indeterminates and test normality.

    False is conclusive; True is evidence only.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    rng = random.Random(seed)
    for _ in range(trials):
        vals = [rng.randint(-SPECIALIZATION_RANGE, SPECIALIZATION_RANGE) for _ in range(p.class_count)]
        grid = [[vals[v] for v in row] for row in p.rows()]
        if not _int_commutator_zero(grid):
            return False
    return True


ORACLES = {
    "lemma2": is_normal_lemma2,
    "symbolic": is_normal_symbolic,
    "subsets": is_normal_binary_assignments,
    "random": is_normal_random_specialization,
}
