"""Named patterns and structural checks.

The extremal pattern of order n is ``[[X, Y], [Yt, Z]]`` with ``X`` a
symmetric (n-3)x(n-3) block of distinct indeterminates, ``Y`` having constant
rows and ``Z`` the 3x3 circulant on ``z, u, v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from .core import (
    BinaryMatrix,
    Pattern,
    coefficient_matrix,
    direct_sum,
    merge_classes,
    pad,
    pattern_from_labels,
    permute_pattern,
)
from .errors import DomainError
from .normality import commutator_of_grid, poly_product, transpose_grid


def extremal_class_count(n: int) -> int:
    return n * (n - 3) // 2 + 3


def circulant3(z: Hashable = "z", u: Hashable = "u", v: Hashable = "v") -> Pattern:
    return pattern_from_labels([[z, u, v], [v, z, u], [u, v, z]])


def extremal_tokens(n: int) -> list[list[tuple]]:
    """Token grid of the extremal pattern, tokens tagged by their role."""
    if n < 3:
        raise DomainError(f"the extremal pattern needs n >= 3, got {n}")
    m = n - 3
    grid = [[None] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            grid[i][j] = ("x", min(i, j), max(i, j))
        for j in range(m, n):
            grid[i][j] = grid[j][i] = ("y", i)
    circ = [["z", "u", "v"], ["v", "z", "u"], ["u", "v", "z"]]
    for a in range(3):
        for b in range(3):
            grid[m + a][m + b] = (circ[a][b],)
    return grid


def extremal(n: int) -> Pattern:
    return pattern_from_labels(extremal_tokens(n))


def with_k_classes(n: int, k: int) -> Pattern:
    """A nonsymmetric normal pattern of order n with exactly k classes.

    Obtained from the extremal pattern by merging classes: x-classes first in
    lexicographic order, then y-classes, then z; u and v are never merged with
    each other.  k = 2 folds the merged pool into u.
    """
    top = extremal_class_count(n) if n >= 3 else None
    if n < 3 or not 2 <= k <= top:
        raise DomainError(f"k must lie in [2, {top}] for n = {n}")
    tokens = extremal_tokens(n)
    m = n - 3
    mergeable = [("x", i, j) for i in range(m) for j in range(i, m)]
    mergeable += [("y", i) for i in range(m)]
    mergeable.append(("z",))
    merges = top - k
    if merges < len(mergeable):
        pool = set(mergeable[: merges + 1])
    else:
        pool = set(mergeable) | {("u",)}
    base = pattern_from_labels(tokens)
    n2 = n * n
    flat = [tokens[t // n][t % n] for t in range(n2)]
    ids_in_pool = {base.cells[t] for t in range(n2) if flat[t] in pool}
    groups = [sorted(ids_in_pool)] + [[c] for c in range(base.class_count) if c not in ids_in_pool]
    return merge_classes(base, groups)


def lemma4_catalog(n: int, m: int) -> list[BinaryMatrix]:
    """Representatives of the normal 0-1 matrices with m in {1, 2, 3} ones."""
    if m not in (1, 2, 3):
        raise DomainError(f"m must be 1, 2 or 3, got {m}")
    if n < 2:
        raise DomainError("order must be at least 2")
    one = BinaryMatrix.identity(1)
    if m == 1:
        return [pad(one, n)]
    if m == 2:
        return [
            pad(BinaryMatrix.identity(2), n),
            pad(BinaryMatrix.from_lists([[0, 1], [1, 0]]), n),
        ]
    if n < 3:
        raise DomainError("three-one forms need n >= 3")
    return [
        pad(BinaryMatrix.identity(3), n),
        pad(BinaryMatrix.from_lists([[1, 1], [1, 0]]), n),
        pad(direct_sum(one, BinaryMatrix.from_lists([[0, 1], [1, 0]])), n),
        pad(BinaryMatrix.from_lists([[0, 1, 0], [0, 0, 1], [1, 0, 0]]), n),
    ]


# -- bordered forms -----------------------------------------------------------


@dataclass(frozen=True)
class BorderedForm:
    """Result of :func:`bordered_form_check`.

    ``form`` is ``"i"`` (one cell at the corner, mirrored border),
    ``"ii-first"`` (``[[xi, xj], [xj, xi]]`` leading block) or
    ``"ii-second"`` (``[[xj, xi], [xi, xk]]`` leading block); ``None`` means
    no permutation exhibits a bordered form, i.e. a counterexample.
    """

    form: str | None
    witness: tuple[int, ...] | None
    pattern: Pattern | None
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.form is not None


def _front_perm(n: int, front: Sequence[int]) -> tuple[int, ...]:
    """Smallest permutation sending front[0] -> 0, front[1] -> 1, ..."""
    perm = [None] * n
    for pos, i in enumerate(front):
        perm[i] = pos
    nxt = len(front)
    for i in range(n):
        if perm[i] is None:
            perm[i] = nxt
            nxt += 1
    return tuple(perm)


def _border_mirrored(p: Pattern, heads: Sequence[int]) -> bool:
    n = p.order
    return all(p.cell(h, j) == p.cell(j, h) for h in heads for j in range(len(heads), n))


def bordered_form_check(p: Pattern, cls: int) -> BorderedForm:
    """Exhibit the bordered form forced by a class occurring once or twice."""
    mat = coefficient_matrix(p, cls)
    n = p.order
    cells = [(i, j) for i in range(n) for j in range(n) if mat.entry(i, j)]
    if len(cells) not in (1, 2):
        raise DomainError(f"class {cls} occurs {len(cells)} times; need 1 or 2")
    if len(cells) == 1:
        (i, j), = cells
        if i != j:
            return BorderedForm(None, None, None, "single occurrence off the diagonal")
        sigma = _front_perm(n, [i])
        q = permute_pattern(p, sigma)
        if _border_mirrored(q, [0]):
            return BorderedForm("i", sigma, q)
        return BorderedForm(None, None, None, "border row differs from border column")
    (i1, j1), (i2, j2) = cells
    if i1 == j1 and i2 == j2:
        sigma = _front_perm(n, [i1, i2])
        q = permute_pattern(p, sigma)
        if q.cell(0, 1) == q.cell(1, 0) and _border_mirrored(q, [0, 1]):
            return BorderedForm("ii-first", sigma, q)
        return BorderedForm(None, None, None, "diagonal pair without a symmetric frame")
    if (i1, j1) == (j2, i2):
        sigma = _front_perm(n, [i1, j1])
        q = permute_pattern(p, sigma)
        if _border_mirrored(q, [0, 1]):
            return BorderedForm("ii-second", sigma, q)
        return BorderedForm(None, None, None, "symmetric pair without a mirrored border")
    return BorderedForm(None, None, None, "two occurrences that are neither diagonal nor mirrored")


# -- block criterion ----------------------------------------------------------


def assemble_blocks(b1, b2, b3) -> list[list[Hashable]]:
    """The grid ``[[B1, B2], [B2t, B3]]``."""
    s, t = len(b1), len(b3)
    if any(len(r) != s for r in b1) or any(len(r) != t for r in b3):
        raise DomainError("B1 and B3 must be square")
    if len(b2) != s or any(len(r) != t for r in b2):
        raise DomainError(f"B2 must be {s}x{t}")
    b2t = transpose_grid(b2) if s else [[] for _ in range(t)]
    top = [list(b1[i]) + list(b2[i]) for i in range(s)]
    bottom = [list(b2t[i]) + list(b3[i]) for i in range(t)]
    return top + bottom


def block_normality(b1, b2, b3) -> bool:
    """Normality of ``[[B1, B2], [B2t, B3]]`` for a symmetric leading block.

    True iff B3 is normal and ``B2 B3 == B2 B3t`` as polynomial matrices.
    The blocks are grids of labels sharing one namespace of indeterminates.
    """
    s = len(b1)
    if any(b1[i][j] != b1[j][i] for i in range(s) for j in range(s)):
        raise DomainError("leading block must be symmetric")
    assemble_blocks(b1, b2, b3)  # shape check
    if commutator_of_grid(b3):
        return False
    if not s:
        return True
    return poly_product(b2, b3) == poly_product(b2, transpose_grid(b3))
