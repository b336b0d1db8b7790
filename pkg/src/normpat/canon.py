"""Canonical forms under simultaneous row/column permutation.

Two patterns are equivalent when one becomes the other after permuting rows
and columns by the same permutation and renaming indeterminates.  The
canonical key is the lexicographically smallest restricted-growth string
reachable that way, found by scanning all ``n!`` permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .core import BinaryMatrix, Pattern, invert_perm, relabel
from .errors import CapacityError, DomainError

MAX_CANON_ORDER = 10


@dataclass(frozen=True)
class CanonicalKey:
    cells: tuple[int, ...]
    witness: tuple[int, ...]

    def pattern(self) -> Pattern:
        n = len(self.witness)
        return Pattern(n, self.cells)


@dataclass(frozen=True)
class SimilarityClass:
    key: CanonicalKey
    representative: Pattern
    member_count: int

    @property
    def class_count(self) -> int:
        return self.representative.class_count


@lru_cache(maxsize=None)
def _perms_with_inverse(n: int):
    """(sigma, sigma^-1) for all sigma in lexicographic order of sigma."""
    return [(s, invert_perm(s)) for s in permutations(range(n))]


def _check_canon_order(n: int) -> None:
    if n > MAX_CANON_ORDER:
        raise CapacityError(f"canonical forms are limited to order {MAX_CANON_ORDER}, got {n}")


def canonical_key(p: Pattern) -> CanonicalKey:
    n = p.order
    _check_canon_order(n)
    cells = p.cells
    best = None
    best_sigma = None
    for sigma, tau in _perms_with_inverse(n):
        # candidate(a, b) = p(tau[a], tau[b]); relabel on the fly and stop
        # as soon as the candidate is known to be larger than the best.
        mapping = {}
        out = []
        smaller = best is None
        t = 0
        aborted = False
        for a in range(n):
            base = tau[a] * n
            for b in range(n):
                v = cells[base + tau[b]]
                lab = mapping.get(v)
                if lab is None:
                    lab = mapping[v] = len(mapping)
                if not smaller:
                    ref = best[t]
                    if lab > ref:
                        aborted = True
                        break
                    if lab < ref:
                        smaller = True
                out.append(lab)
                t += 1
            if aborted:
                break
        if not aborted and smaller:
            best = out
            best_sigma = sigma
    return CanonicalKey(tuple(best), best_sigma)


def orbit(p: Pattern) -> set[tuple[int, ...]]:
    """All restricted-growth strings similar to ``p``."""
    n = p.order
    _check_canon_order(n)
    cells = p.cells
    return {
        relabel(cells[tau[a] * n + tau[b]] for a in range(n) for b in range(n))
        for _, tau in _perms_with_inverse(n)
    }


def similarity_class(p: Pattern) -> SimilarityClass:
    key = canonical_key(p)
    return SimilarityClass(key, key.pattern(), len(orbit(p)))


def are_equivalent(p: Pattern, q: Pattern) -> bool:
    if p.order != q.order:
        raise DomainError(f"order mismatch: {p.order} vs {q.order}")
    if p.class_count != q.class_count or sorted(p.class_sizes()) != sorted(q.class_sizes()):
        return False
    return canonical_key(p).cells == canonical_key(q).cells


# -- 0-1 matrices -------------------------------------------------------------


@dataclass(frozen=True)
class BinaryKey:
    """Lexicographically smallest entry sequence of a 0-1 matrix under similarity.

    Ones sort before zeros (entries are compared as ``1 - b``) so that the
    representative packs its ones into the top-left corner.
    """

    entries: tuple[int, ...]
    witness: tuple[int, ...]

    def matrix(self) -> BinaryMatrix:
        n = len(self.witness)
        return BinaryMatrix.from_cells(n, (t for t, v in enumerate(self.entries) if v == 0))


def binary_key(b: BinaryMatrix) -> BinaryKey:
    n = b.order
    _check_canon_order(n)
    rows = b.rows
    best = None
    best_sigma = None
    for sigma, tau in _perms_with_inverse(n):
        cand = tuple(1 - ((rows[tau[a]] >> tau[c]) & 1) for a in range(n) for c in range(n))
        if best is None or cand < best:
            best, best_sigma = cand, sigma
    return BinaryKey(best, best_sigma)


def is_binary_perm_similar(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    """True iff some permutation matrix P gives ``Pt A P == B``."""
    if a.order != b.order:
        raise DomainError(f"order mismatch: {a.order} vs {b.order}")
    fa = sum(r.bit_count() for r in a.rows)
    fb = sum(r.bit_count() for r in b.rows)
    if fa != fb:
        return False
    if fa in (0, a.order * a.order):
        return True
    return binary_key(a).entries == binary_key(b).entries


def permute_binary(b: BinaryMatrix, perm) -> BinaryMatrix:
    """Move entry (i, j) to (perm[i], perm[j])."""
    n = b.order
    rows = [0] * n
    for i, r in enumerate(b.rows):
        for j in range(n):
            if (r >> j) & 1:
                rows[perm[i]] |= 1 << perm[j]
    return BinaryMatrix(n, tuple(rows))
