import random

import pytest
from conftest import sympy_is_normal

from normpat.canon import are_equivalent, canonical_key, is_binary_perm_similar
from normpat.constructions import (
    assemble_blocks,
    block_normality,
    bordered_form_check,
    circulant3,
    extremal,
    extremal_class_count,
    lemma4_catalog,
    with_k_classes,
)
from normpat.core import (
    BinaryMatrix,
    coefficient_matrix,
    is_symmetric,
    merge_classes,
    pattern_from_labels,
    permute_pattern,
)
from normpat.errors import DomainError
from normpat.normality import (
    is_normal_binary,
    is_normal_binary_assignments,
    is_normal_lemma2,
    is_normal_symbolic,
)
from normpat.search import SearchConfig, pruned_search


def test_extremal_examples():
    assert extremal(3) == circulant3()
    e4 = extremal(4)
    assert e4.class_count == 5 and not is_symmetric(e4) and is_normal_lemma2(e4)
    assert extremal(10).class_count == 38
    with pytest.raises(DomainError):
        extremal(2)


def test_extremal_layout_order_4():
    e4 = extremal(4)
    expected = pattern_from_labels([
        ["x11", "y1", "y1", "y1"],
        ["y1", "z", "u", "v"],
        ["y1", "v", "z", "u"],
        ["y1", "u", "v", "z"],
    ])
    assert e4 == expected


def test_extremal_independently_normal():
    for n in (3, 4, 5, 6):
        assert sympy_is_normal(extremal(n))
        assert is_normal_binary_assignments(extremal(n))


def test_circulant_variants():
    assert circulant3("z", "u", "v").class_count == 3
    assert circulant3("a", "a", "a").class_count == 1
    two = circulant3("z", "u", "u")
    assert two.class_count == 2 and is_symmetric(two)


def test_lemma4_catalog_shapes():
    assert len(lemma4_catalog(3, 3)) == 4
    assert len(lemma4_catalog(2, 2)) == 2
    assert len(lemma4_catalog(5, 1)) == 1
    for n in (3, 4, 5):
        for m in (1, 2, 3):
            mats = lemma4_catalog(n, m)
            assert all(b.order == n and is_normal_binary(b) for b in mats)
            assert all(sum(r.bit_count() for r in b.rows) == m for b in mats)
            for i in range(len(mats)):
                for j in range(i + 1, len(mats)):
                    assert not is_binary_perm_similar(mats[i], mats[j])
    with pytest.raises(DomainError):
        lemma4_catalog(3, 4)
    with pytest.raises(DomainError):
        lemma4_catalog(2, 3)
    with pytest.raises(DomainError):
        lemma4_catalog(1, 1)


def test_with_k_classes_examples():
    p = with_k_classes(3, 2)
    assert p.class_count == 2 and not is_symmetric(p) and is_normal_lemma2(p)
    assert with_k_classes(5, 8) == extremal(5)
    p = with_k_classes(4, 3)
    assert p.class_count == 3 and not is_symmetric(p) and is_normal_lemma2(p)
    for bad in ((4, 1), (4, 6), (2, 2)):
        with pytest.raises(DomainError):
            with_k_classes(*bad)


def test_with_k_classes_full_range():
    for n in range(3, 9):
        for k in range(2, extremal_class_count(n) + 1):
            p = with_k_classes(n, k)
            assert p.class_count == k
            assert not is_symmetric(p)
            assert is_normal_lemma2(p)


# -- bordered forms -----------------------------------------------------------


def test_bordered_form_extremal_single_class():
    e4 = extremal(4)
    res = bordered_form_check(e4, 0)  # the corner class occurs once
    assert res.form == "i"
    assert res.witness == (0, 1, 2, 3)


def test_bordered_form_diagonal_pair():
    # class "a" sits at (0,0) and (1,1), mirrored frame around it
    p = pattern_from_labels([
        ["a", "b", "c", "c"],
        ["b", "a", "d", "d"],
        ["c", "d", "e", "e"],
        ["c", "d", "e", "e"],
    ])
    assert is_normal_lemma2(p)
    assert coefficient_matrix(p, 0) == BinaryMatrix.from_lists(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert bordered_form_check(p, 0).form == "ii-first"
    q = permute_pattern(p, (2, 0, 3, 1))
    res = bordered_form_check(q, q.cell(2, 2))
    assert res.form == "ii-first"
    assert permute_pattern(q, res.witness) == res.pattern


def test_bordered_form_mirrored_pair():
    p = pattern_from_labels([
        ["b", "a", "c"],
        ["a", "d", "c"],
        ["c", "c", "e"],
    ])
    assert is_normal_lemma2(p)
    assert bordered_form_check(p, 1).form == "ii-second"


def test_bordered_form_counterexample_report_and_errors():
    bad = pattern_from_labels([["x", "y"], ["z", "x"]])  # not normal; y occurs once off the diagonal
    assert not bordered_form_check(bad, 1).found
    with pytest.raises(DomainError):
        bordered_form_check(circulant3(), 0)


def test_bordered_forms_hold_for_searched_patterns():
    report = pruned_search(SearchConfig(4, min_classes=2))
    assert report.completed
    checked = 0
    for keys in report.keys_by_k.values():
        for cells in keys:
            p = canonical_key(pattern_from_labels([cells[i * 4:(i + 1) * 4] for i in range(4)])).pattern()
            for cls, size in enumerate(p.class_sizes()):
                if size <= 2:
                    assert bordered_form_check(p, cls).found
                    checked += 1
    assert checked


# -- block criterion ----------------------------------------------------------


def test_block_examples():
    b1 = [["x"]]
    b2 = [["y", "y", "y"]]
    circ = [["z", "u", "v"], ["v", "z", "u"], ["u", "v", "z"]]
    assert block_normality(b1, b2, circ)
    assert pattern_from_labels(assemble_blocks(b1, b2, circ)) == extremal(4)
    sym3 = [["a", "b"], ["b", "c"]]
    assert block_normality([["p", "q"], ["q", "p"]], [["r", "s"], ["t", "w"]], sym3)
    assert not block_normality([["p"]], [["q", "r"]], [["x", "y"], ["z", "x"]])
    with pytest.raises(DomainError):
        block_normality([["a", "b"], ["c", "a"]], [["d"], ["e"]], [["f"]])
    with pytest.raises(DomainError):
        block_normality([["a"]], [["b"]], [["c", "d"], ["e", "f"]])


def _random_block_triple(rng):
    s = rng.randint(1, 3)
    t = rng.randint(1, 3)
    k = rng.randint(1, 6)
    b1 = [[None] * s for _ in range(s)]
    for i in range(s):
        for j in range(i, s):
            b1[i][j] = b1[j][i] = rng.randrange(k)
    b2 = [[rng.randrange(k) for _ in range(t)] for _ in range(s)]
    if rng.random() < 0.4:
        # favour normal trailing blocks so both outcomes are exercised
        b3 = circulant3(*rng.sample(range(k + 3), 3)).rows() if t == 3 else [[rng.randrange(k)] * t for _ in range(t)]
        b3 = [list(r) for r in b3]
    else:
        b3 = [[rng.randrange(k) for _ in range(t)] for _ in range(t)]
    return b1, b2, b3


def test_block_criterion_agrees_with_symbolic_oracle():
    rng = random.Random(7)
    seen = set()
    for _ in range(300):
        b1, b2, b3 = _random_block_triple(rng)
        expected = is_normal_symbolic(pattern_from_labels(assemble_blocks(b1, b2, b3)))
        assert block_normality(b1, b2, b3) == expected
        seen.add(expected)
    assert seen == {True, False}


def test_merge_schedule_keeps_u_v_apart():
    e = extremal(5)
    for k in range(2, 9):
        p = with_k_classes(5, k)
        # the circulant block always carries two distinct off-diagonal classes
        assert p.cell(3, 4) != p.cell(4, 3)
    assert are_equivalent(with_k_classes(4, 2), merge_classes(extremal(4), [[0, 1, 2, 3], [4]]))
    assert e.class_count == 8
