import random

import pytest
from sympy.functions.combinatorial.numbers import bell

from normpat.constructions import circulant3
from normpat.core import (
    BinaryMatrix,
    Pattern,
    all_patterns,
    coefficient_matrices,
    coefficient_matrix,
    direct_sum,
    invert_perm,
    is_restricted_growth,
    is_symmetric,
    merge_classes,
    ones_count,
    pad,
    pattern_from_labels,
    permute_pattern,
    restricted_growth_strings,
    row_col_profile,
    transpose_pattern,
)
from normpat.errors import CapacityError, DomainError, MalformedInputError


def test_labels_relabel_first_occurrence():
    assert pattern_from_labels([["x", "y"], ["y", "x"]]).cells == (0, 1, 1, 0)
    p = pattern_from_labels([["a", "a"], ["a", "a"]])
    assert p.cells == (0, 0, 0, 0) and p.class_count == 1


def test_circulant_cells():
    p = pattern_from_labels([["z", "u", "v"], ["v", "z", "u"], ["u", "v", "z"]])
    assert p.cells == (0, 1, 2, 2, 0, 1, 1, 2, 0)
    assert p.class_count == 3


def test_ragged_rows_rejected():
    with pytest.raises(MalformedInputError):
        pattern_from_labels([["a", "b"], ["c"]])
    with pytest.raises(MalformedInputError):
        pattern_from_labels([])


def test_pattern_invariants_enforced():
    with pytest.raises(DomainError):
        Pattern(2, (1, 0, 0, 0))
    with pytest.raises(DomainError):
        Pattern(2, (0, 2, 1, 0))
    with pytest.raises(MalformedInputError):
        Pattern(2, (0, 1, 0))
    with pytest.raises(CapacityError):
        Pattern(33, (0,) * 33 * 33)


def test_renaming_tokens_gives_same_pattern():
    rng = random.Random(3)
    for _ in range(50):
        grid = [[rng.randrange(4) for _ in range(4)] for _ in range(4)]
        names = {v: f"tok{rng.random()}" for v in range(4)}
        renamed = [[names[v] for v in row] for row in grid]
        assert pattern_from_labels(grid) == pattern_from_labels(renamed)


def test_coefficient_matrices_partition_ones():
    p = circulant3()
    assert coefficient_matrix(p, 0) == BinaryMatrix.identity(3)
    total = 0
    for m in coefficient_matrices(p):
        assert not total & m.cell_mask()
        total |= m.cell_mask()
    assert total == BinaryMatrix.ones(3).cell_mask()
    q = pattern_from_labels([["x", "y"], ["y", "x"]])
    assert coefficient_matrix(q, 1).to_lists() == [[0, 1], [1, 0]]
    with pytest.raises(DomainError):
        coefficient_matrix(q, 2)
    with pytest.raises(DomainError):
        coefficient_matrix(q, -1)


def test_symmetry_predicate():
    assert is_symmetric(pattern_from_labels([["x", "y"], ["y", "x"]]))
    assert not is_symmetric(circulant3())


def test_permute_inverse_and_identity():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 5)
        p = pattern_from_labels([[rng.randrange(5) for _ in range(n)] for _ in range(n)])
        sigma = list(range(n))
        rng.shuffle(sigma)
        assert permute_pattern(p, range(n)) == p
        assert permute_pattern(permute_pattern(p, sigma), invert_perm(sigma)) == p
        assert transpose_pattern(transpose_pattern(p)) == p
        if is_symmetric(p):
            assert transpose_pattern(p) == p
        # without relabeling, symmetry is exactly "transpose leaves the cells unchanged"
        raw_t = tuple(p.cell(j, i) for i in range(n) for j in range(n))
        assert is_symmetric(p) == (raw_t == p.cells)


def test_relabeled_transpose_can_fix_a_nonsymmetric_pattern():
    p = pattern_from_labels([["x", "y"], ["z", "x"]])
    assert not is_symmetric(p)
    assert transpose_pattern(p) == p


def test_permute_moves_cells():
    p = pattern_from_labels([["a", "b", "c"], ["d", "e", "f"], ["g", "h", "i"]])
    q = permute_pattern(p, (1, 2, 0))
    # cell (i, j) moves to (sigma[i], sigma[j]): "b" at (0, 1) lands on (1, 2)
    assert pattern_from_labels([["i", "g", "h"], ["c", "a", "b"], ["f", "d", "e"]]) == q


def test_bad_permutation_and_groups():
    p = circulant3()
    with pytest.raises(DomainError):
        permute_pattern(p, (0, 0, 1))
    with pytest.raises(DomainError):
        merge_classes(p, [[0, 1]])
    with pytest.raises(DomainError):
        merge_classes(p, [[0, 1], [1, 2]])


def test_merge_circulant_symmetrizes():
    p = circulant3()
    merged = merge_classes(p, [[1, 2], [0]])
    assert merged.class_count == 2 and is_symmetric(merged)
    assert merge_classes(p, [[0], [1], [2]]) == p


def test_rgs_counts_are_bell_numbers():
    for length in range(7):
        seqs = list(restricted_growth_strings(length))
        assert len(seqs) == bell(length)
        assert all(is_restricted_growth(s) for s in seqs)
        assert seqs == sorted(seqs)
    assert sum(1 for _ in all_patterns(2)) == 15
    assert sum(1 for _ in restricted_growth_strings(5, 2)) == 2 ** 4


def test_ones_and_profile():
    assert ones_count(BinaryMatrix.ones(3)) == 9
    assert ones_count(pad(BinaryMatrix.identity(2), 5)) == 2
    prof = row_col_profile(BinaryMatrix.from_lists([[0, 1], [0, 0]]))
    assert prof.r == (1, 0) and prof.c == (0, 1)
    prof = row_col_profile(BinaryMatrix.from_lists([[1, 1], [0, 1]]))
    assert prof.r_off == (1, 0) and prof.c_off == (0, 1)


def test_binary_matrix_basics():
    b = BinaryMatrix.from_lists([[0, 1, 1], [0, 0, 1], [1, 0, 0]])
    assert b.transpose().to_lists() == [[0, 0, 1], [1, 0, 0], [1, 1, 0]]
    assert b.transpose().transpose() == b
    assert BinaryMatrix.from_cells(3, [1, 2, 5, 6]) == b
    assert direct_sum(BinaryMatrix.identity(1), BinaryMatrix.ones(2)).to_lists() == [
        [1, 0, 0], [0, 1, 1], [0, 1, 1]]
    with pytest.raises(DomainError):
        BinaryMatrix.from_lists([[2]])
    with pytest.raises(DomainError):
        b + b
    with pytest.raises(DomainError):
        pad(b, 2)
