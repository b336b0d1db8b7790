"""Shared helpers: independent reference implementations used as oracles.

Nothing here imports the package's own normality or canonical-form code, so
tests that compare against these helpers are genuine cross-checks.
"""

import random
import sys
from itertools import permutations

import numpy as np
import pytest
import sympy


def np_grid(p):
    return np.array(p.rows(), dtype=np.int64)


def numpy_is_normal(entries):
    a = np.asarray(entries, dtype=np.int64)
    return np.array_equal(a @ a.T, a.T @ a)


def sympy_commutator(p):
    """A At - At A with one sympy symbol per class."""
    syms = sympy.symbols(f"t0:{p.class_count}")
    a = sympy.Matrix(p.order, p.order, lambda i, j: syms[p.cell(i, j)])
    return (a * a.T - a.T * a).applyfunc(sympy.expand)


def sympy_is_normal(p):
    return all(e == 0 for e in sympy_commutator(p))


def brute_canonical(p):
    """Smallest first-occurrence relabeling over all simultaneous permutations."""
    n = p.order
    best = None
    for sigma in permutations(range(n)):
        inv = [0] * n
        for i, s in enumerate(sigma):
            inv[s] = i
        seen = {}
        cand = []
        for a in range(n):
            for b in range(n):
                v = p.cell(inv[a], inv[b])
                cand.append(seen.setdefault(v, len(seen)))
        cand = tuple(cand)
        if best is None or cand < best:
            best = cand
    return best


def random_labels(rng, n, k):
    return [[rng.randrange(k) for _ in range(n)] for _ in range(n)]


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion that ran."""
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
