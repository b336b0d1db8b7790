"""Searches over entry patterns of small order.

Four strategies produce the same :class:`SearchReport`:

``exhaustive-rgs``
    every restricted-growth string of length n*n (n <= 3);
``pruned-dfs``
    row-major backtracking with incremental commutator and row/column
    balance checks, plus prefix-minimality symmetry reduction (n <= 5);
``lemma6-reduction``
    only the bordered forms that a class occurring once or twice forces,
    built around nonsymmetric normal blocks of smaller order; exhaustive
    when ``3 * min_classes > n*n``;
``catalog-cover``
    exact covers of the grid by pairwise compatible normal 0-1 matrices.

Reports count similarity classes of normal patterns (nonsymmetric ones when
``require_nonsymmetric``) with at least ``min_classes`` classes.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import permutations

from .canon import SimilarityClass, canonical_key, orbit
from .classify import catalog_for_occupancy, classify_normal_binary
from .constructions import extremal, extremal_class_count
from .core import Pattern, is_symmetric, merge_classes, relabel, restricted_growth_strings
from .errors import CapacityError, DomainError
from .normality import _pair_ok, is_normal_lemma2

STRATEGIES = ("exhaustive-rgs", "pruned-dfs", "lemma6-reduction", "catalog-cover")
MAX_ORDER = {"exhaustive-rgs": 3, "pruned-dfs": 5, "lemma6-reduction": 5, "catalog-cover": 5}
WITNESS_LIMIT = 100
DEFAULT_BUDGET = 50_000_000
N5_CROSS_CHECK_BUDGET = 200_000


@dataclass(frozen=True)
class SearchConfig:
    order: int
    min_classes: int = 2
    require_nonsymmetric: bool = True
    node_budget: int = DEFAULT_BUDGET
    strategy: str = "pruned-dfs"
    worker_count: int = 1
    seed: int | None = None
    symmetry_reduction: bool = True
    min_part: int = 1

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise DomainError(f"unknown strategy {self.strategy!r}; choose from {', '.join(STRATEGIES)}")
        if self.node_budget <= 0:
            raise DomainError("node_budget must be positive")
        if self.order < 1:
            raise DomainError("order must be positive")
        if self.order > MAX_ORDER[self.strategy]:
            hint = " use pruned-dfs, lemma6-reduction or catalog-cover" if self.strategy == "exhaustive-rgs" else ""
            raise CapacityError(
                f"{self.strategy} supports n <= {MAX_ORDER[self.strategy]}, got {self.order};{hint}"
            )
        if self.worker_count < 1:
            raise DomainError("worker_count must be at least 1")
        if self.min_part < 1:
            raise DomainError("min_part must be at least 1")


@dataclass
class SearchReport:
    config: SearchConfig
    completed: bool
    max_classes_found: int
    witnesses: list[SimilarityClass]
    counts_by_k: dict[int, int]
    nodes_visited: int
    nodes_pruned_by_rule: dict[str, int]
    merge_checks: int = 0
    keys_by_k: dict[int, list[tuple[int, ...]]] = field(default_factory=dict, repr=False)

    def witness_keys(self) -> set[tuple[int, ...]]:
        return {w.key.cells for w in self.witnesses}

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "completed": self.completed,
            "max_classes_found": self.max_classes_found,
            "counts_by_k": {str(k): v for k, v in sorted(self.counts_by_k.items())},
            "witnesses": [
                {
                    "classes": w.class_count,
                    "canonical_cells": list(w.key.cells),
                    "witness_permutation": list(w.key.witness),
                    "member_count": w.member_count,
                    "rows": [[f"x{v}" for v in row] for row in w.representative.rows()],
                }
                for w in self.witnesses
            ],
            "nodes_visited": self.nodes_visited,
            "nodes_pruned_by_rule": dict(sorted(self.nodes_pruned_by_rule.items())),
            "merge_checks": self.merge_checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"config.{k}: {_text_value(v)}" for k, v in d["config"].items()]
        lines += [
            f"completed: {_text_value(d['completed'])}",
            f"max_classes_found: {d['max_classes_found']}",
            "counts_by_k: " + (" ".join(f"{k}={v}" for k, v in d["counts_by_k"].items()) or "-"),
            f"nodes_visited: {d['nodes_visited']}",
            "nodes_pruned_by_rule: "
            + (" ".join(f"{k}={v}" for k, v in d["nodes_pruned_by_rule"].items()) or "-"),
            f"merge_checks: {d['merge_checks']}",
            f"witness_count: {len(d['witnesses'])}",
        ]
        for i, w in enumerate(d["witnesses"]):
            lines.append(
                f"witness[{i}]: classes={w['classes']} members={w['member_count']} "
                f"sigma={' '.join(map(str, w['witness_permutation']))}"
            )
            lines += [f"  {' '.join(row)}" for row in w["rows"]]
        return "\n".join(lines) + "\n"


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    return str(v)


# -- result collection --------------------------------------------------------


class _Found:
    """Similarity classes met so far, bucketed by class count."""

    def __init__(self):
        self.keys: dict[int, dict[tuple, tuple]] = {}

    def add(self, k: int, key_cells: tuple, cells: tuple) -> None:
        self.keys.setdefault(k, {}).setdefault(key_cells, cells)

    def merge(self, other: "_Found") -> None:
        for k, bucket in other.keys.items():
            mine = self.keys.setdefault(k, {})
            for key, cells in bucket.items():
                mine.setdefault(key, cells)


def _leaf(cells, n, cfg: SearchConfig, found: _Found, pruned: Counter) -> None:
    p = Pattern(n, relabel(cells))
    if p.class_count < cfg.min_classes:
        return
    if cfg.require_nonsymmetric and is_symmetric(p):
        pruned["leaf-symmetric"] += 1
        return
    if not is_normal_lemma2(p):
        pruned["leaf-normality"] += 1
        return
    key = canonical_key(p)
    found.add(p.class_count, key.cells, p.cells)


def _finish(cfg: SearchConfig, completed: bool, found: _Found, nodes: int, pruned: Counter) -> SearchReport:
    n = cfg.order
    counts = {k: len(b) for k, b in sorted(found.keys.items())}
    top = max(counts, default=0)
    witnesses = []
    if top:
        for key_cells in sorted(found.keys[top])[:WITNESS_LIMIT]:
            witnesses.append(similarity_class_from_key(n, key_cells))
    keys_by_k = {k: sorted(b) for k, b in sorted(found.keys.items())}
    report = SearchReport(cfg, completed, top, witnesses, counts, nodes, dict(pruned), 0, keys_by_k)
    report.merge_checks = _merge_spot_checks(report)
    return report


def similarity_class_from_key(n: int, key_cells) -> SimilarityClass:
    p = Pattern(n, key_cells)
    return SimilarityClass(canonical_key(p), p, len(orbit(p)))


def _merge_spot_checks(report: SearchReport, per_witness: int = 3) -> int:
    """Coarsening a normal pattern must keep it normal; sample a few merges."""
    rng = random.Random(report.config.seed or 0)
    done = 0
    for w in report.witnesses:
        k = w.class_count
        for _ in range(per_witness):
            labels = [rng.randrange(k) for _ in range(k)]
            groups: dict[int, list[int]] = {}
            for cls, g in enumerate(labels):
                groups.setdefault(g, []).append(cls)
            merged = merge_classes(w.representative, groups.values())
            if not is_normal_lemma2(merged):
                raise AssertionError(f"merging {list(groups.values())} broke normality of {w.key.cells}")
            done += 1
    return done


# -- exhaustive ---------------------------------------------------------------


def exhaustive_search(cfg: SearchConfig) -> SearchReport:
    if cfg.strategy != "exhaustive-rgs":
        cfg = _replace(cfg, strategy="exhaustive-rgs")
    n = cfg.order
    found = _Found()
    pruned: Counter = Counter()
    nodes = 0
    for cells in restricted_growth_strings(n * n):
        nodes += 1
        if nodes > cfg.node_budget:
            return _finish(cfg, False, found, nodes - 1, pruned)
        _leaf(cells, n, cfg, found, pruned)
    return _finish(cfg, True, found, nodes, pruned)


def _replace(cfg: SearchConfig, **changes) -> SearchConfig:
    d = asdict(cfg)
    d.update(changes)
    return SearchConfig(**d)


# -- backtracking over the grid -----------------------------------------------


class _BudgetExceeded(Exception):
    pass


@lru_cache(maxsize=None)
def _stabilizers(n: int, fixed: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each prefix length L, inverses of the group elements that map the
    first L row-major cells onto themselves (identity excluded).

    ``fixed`` lists points that the group must fix setwise as a block: an
    empty tuple means all of S_n, ``(0,)`` fixes 0, ``(0, 1)`` preserves {0, 1}.
    """
    group = []
    block = set(fixed)
    for sigma in permutations(range(n)):
        if any(sigma[i] not in block for i in block):
            continue
        if sigma == tuple(range(n)):
            continue
        group.append(sigma)
    out = []
    for length in range(n * n + 1):
        filled = {divmod(t, n) for t in range(length)}
        stab = []
        for sigma in group:
            if all((sigma[i], sigma[j]) in filled for i, j in filled):
                tau = [0] * n
                for i, s in enumerate(sigma):
                    tau[s] = i
                stab.append(tuple(tau))
        out.append(tuple(stab))
    return tuple(out)


@dataclass(frozen=True)
class _GridSpec:
    """Constraints on the grid for one backtracking run."""

    tie: tuple  # tie[t] = earlier position forced equal to t, or None
    reserved: tuple[int, ...] = ()  # positions of a class occurring nowhere else
    fixed: tuple[int, ...] = ()  # symmetry group must preserve this block

    @staticmethod
    def free(n: int) -> "_GridSpec":
        return _GridSpec((None,) * (n * n))


def bordered_specs(n: int) -> dict[str, _GridSpec]:
    """Grid constraints for the three bordered forms."""
    n2 = n * n

    def mirrored(heads):
        tie = [None] * n2
        for h in heads:
            for j in range(len(heads), n):
                tie[j * n + h] = h * n + j
        if len(heads) == 2:
            tie[n] = 1
        return tie

    out = {}
    tie = mirrored([0])
    out["i"] = _GridSpec(tuple(tie), (0,), (0,))
    if n >= 2:
        tie = mirrored([0, 1])
        tie[1 * n + 1] = 0
        out["ii-first"] = _GridSpec(tuple(tie), (0, n + 1), (0, 1))
        tie = mirrored([0, 1])
        out["ii-second"] = _GridSpec(tuple(tie), (1, n), (0, 1))
    return out


class _Engine:
    def __init__(self, n: int, cfg: SearchConfig, spec: _GridSpec, budget: int):
        if n * n >= 64:
            raise CapacityError("grid backtracking supports n <= 7")
        self.n = n
        self.n2 = n * n
        self.cfg = cfg
        self.spec = spec
        self.budget = budget
        self.nodes = 0
        self.pruned: Counter = Counter()
        self.found = _Found()
        n2 = self.n2
        self.cells = [-1] * n2
        self.tops = [-1] * (n2 + 1)  # tops[t] = max label among the first t cells
        self.row_cnt = [[0] * (n2 + 1) for _ in range(n)]
        self.col_cnt = [[0] * (n2 + 1) for _ in range(n)]
        self.row_rem = [n] * n
        self.col_rem = [n] * n
        self.colside = [Counter() for _ in range(n2)]
        self.rowside = [None] * n2
        self.reserved_first = spec.reserved[0] if spec.reserved else None
        self.branching = [
            spec.tie[t] is None and t != self.reserved_first for t in range(n2)
        ]
        # positions strictly after t that can open a new class; below the
        # diagonal a cell must reuse a label of its (complete) mirror row
        after = [0] * (n2 + 1)
        for t in range(n2 - 1, -1, -1):
            i, j = divmod(t, n)
            opens = (self.branching[t] and j >= i) or t == self.reserved_first
            after[t] = after[t + 1] + (1 if opens else 0)
        self.free_after = after[1:] + [0]
        self.stab = _stabilizers(n, spec.fixed) if cfg.symmetry_reduction else None

    # -- state updates ---------------------------------------------------------

    def assign(self, t: int, v: int):
        """Place label v at t; return the violated rule or None.

        The caller must call :meth:`unassign` afterwards either way.
        """
        n = self.n
        cells = self.cells
        i, j = divmod(t, n)
        cells[t] = v
        self.tops[t + 1] = max(self.tops[t], v)
        self.row_cnt[i][v] += 1
        self.col_cnt[j][v] += 1
        self.row_rem[i] -= 1
        self.col_rem[j] -= 1
        base = i * n
        colside = self.colside
        rowside = self.rowside
        bad = None
        for p in range(j + 1):
            u = cells[base + p]
            key = (u << 6) | v if u <= v else (v << 6) | u
            c = colside[p * n + j]
            c[key] += 1
            if bad is None and j < i and c[key] > rowside[p * n + j].get(key, 0):
                bad = "commutator"
        if bad:
            return bad
        if j == n - 1:
            row_i = cells[base:base + n]
            for p in range(i + 1):
                rp = cells[p * n:p * n + n]
                rs = Counter(
                    (a << 6) | b if a <= b else (b << 6) | a for a, b in zip(rp, row_i)
                )
                rowside[p * n + i] = rs
                for key, cnt in colside[p * n + i].items():
                    if cnt > rs.get(key, 0):
                        bad = "commutator"
                        break
                if bad:
                    return bad
        top = self.tops[t + 1]
        if not (self._balanced(i, top) and (i == j or self._balanced(j, top))):
            return "eq3"
        if top + 1 + self.free_after[t] < self.cfg.min_classes:
            return "class-bound"
        if self.stab is not None and not self._prefix_minimal(t + 1):
            return "symmetry"
        return None

    def _balanced(self, x: int, top: int) -> bool:
        rc, cc = self.row_cnt[x], self.col_cnt[x]
        need_row = need_col = 0
        for c in range(top + 1):
            d = cc[c] - rc[c]
            if d > 0:
                need_row += d
            elif d < 0:
                need_col -= d
        return need_row <= self.row_rem[x] and need_col <= self.col_rem[x]

    def _prefix_minimal(self, length: int) -> bool:
        n = self.n
        cells = self.cells
        for tau in self.stab[length]:
            mapping = {}
            for t in range(length):
                a, b = divmod(t, n)
                v = cells[tau[a] * n + tau[b]]
                lab = mapping.get(v)
                if lab is None:
                    lab = mapping[v] = len(mapping)
                ref = cells[t]
                if lab != ref:
                    if lab < ref:
                        return False
                    break
        return True

    def unassign(self, t: int) -> None:
        n = self.n
        cells = self.cells
        i, j = divmod(t, n)
        v = cells[t]
        base = i * n
        for p in range(j + 1):
            u = cells[base + p]
            key = (u << 6) | v if u <= v else (v << 6) | u
            c = self.colside[p * n + j]
            c[key] -= 1
            if not c[key]:
                del c[key]
        self.row_cnt[i][v] -= 1
        self.col_cnt[j][v] -= 1
        self.row_rem[i] += 1
        self.col_rem[j] += 1
        cells[t] = -1

    # -- traversal -------------------------------------------------------------

    def candidates(self, t: int):
        spec = self.spec
        src = spec.tie[t]
        if src is not None:
            return (self.cells[src],)
        top = self.tops[t]
        if t == self.reserved_first:
            return (top + 1,)
        banned = -1
        if self.reserved_first is not None and self.reserved_first < t:
            banned = self.cells[self.reserved_first]
        i, j = divmod(t, self.n)
        if j < i:
            # column j may only take labels that row j has to spare
            rc, cc = self.row_cnt[j], self.col_cnt[j]
            return tuple(v for v in range(top + 1) if rc[v] > cc[v] and v != banned)
        if self.branching[t] and top + 1 + self.free_after[t] < self.cfg.min_classes:
            # reusing a label here cannot reach min_classes any more
            return (top + 1,)
        return tuple(v for v in range(top + 2) if v != banned)

    def run(self, start: int = 0, stop: int | None = None, prefixes: list | None = None) -> None:
        n2 = self.n2
        cells = self.cells

        def rec(t: int):
            if stop is not None and t == stop:
                prefixes.append(tuple(cells[:t]))
                return
            if t == n2:
                _leaf(tuple(cells), self.n, self.cfg, self.found, self.pruned)
                return
            for v in self.candidates(t):
                self.nodes += 1
                if self.nodes > self.budget:
                    raise _BudgetExceeded
                rule = self.assign(t, v)
                if rule is None:
                    rec(t + 1)
                else:
                    self.pruned[rule] += 1
                self.unassign(t)

        rec(start)

    def replay(self, prefix) -> None:
        for t, v in enumerate(prefix):
            rule = self.assign(t, v)
            if rule is not None:
                raise AssertionError(f"shard prefix rejected by {rule}")


def _shard_depth(n: int) -> int:
    return min(n * n, 2 * n)


def _run_shard(args):
    n, cfg, spec, prefix, budget = args
    eng = _Engine(n, cfg, spec, budget)
    eng.replay(prefix)
    completed = True
    try:
        eng.run(start=len(prefix))
    except _BudgetExceeded:
        completed = False
        eng.nodes = budget
    return eng.nodes, eng.pruned, eng.found, completed


def _grid_search(cfg: SearchConfig, specs: list[_GridSpec]) -> SearchReport:
    """Backtracking under each spec, split into deterministic prefix shards."""
    n = cfg.order
    found = _Found()
    pruned: Counter = Counter()
    nodes = 0
    jobs = []
    for spec in specs:
        eng = _Engine(n, cfg, spec, cfg.node_budget - nodes)
        prefixes: list = []
        try:
            eng.run(stop=_shard_depth(n), prefixes=prefixes)
        except _BudgetExceeded:
            nodes = cfg.node_budget
            pruned.update(eng.pruned)
            return _finish(cfg, False, found, nodes, pruned)
        nodes += eng.nodes
        pruned.update(eng.pruned)
        found.merge(eng.found)  # leaves shallower than the shard depth
        jobs += [(n, cfg, spec, p, cfg.node_budget) for p in prefixes]

    completed = True

    def consume(results):
        nonlocal nodes, completed
        for shard_nodes, shard_pruned, shard_found, shard_done in results:
            nodes += shard_nodes
            if nodes > cfg.node_budget or not shard_done:
                nodes = min(nodes, cfg.node_budget)
                completed = False
                return
            pruned.update(shard_pruned)
            found.merge(shard_found)

    if cfg.worker_count > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            consume(pool.map(_run_shard, jobs, chunksize=max(1, len(jobs) // (4 * cfg.worker_count))))
    else:
        consume(_run_shard(job) for job in jobs)
    return _finish(cfg, completed, found, nodes, pruned)


def pruned_search(cfg: SearchConfig) -> SearchReport:
    if cfg.strategy != "pruned-dfs":
        cfg = _replace(cfg, strategy="pruned-dfs")
    return _grid_search(cfg, [_GridSpec.free(cfg.order)])


def pigeonhole_holds(n: int, min_classes: int) -> bool:
    """Every pattern with at least min_classes classes has a class of size <= 2."""
    return 3 * min_classes > n * n


def lemma6_reduction_search(
    cfg: SearchConfig, require_pigeonhole: bool = True, method: str = "block"
) -> SearchReport:
    """Search only the bordered forms forced by a class occurring once or twice.

    With ``require_pigeonhole`` (the default) this is exhaustive for the
    stratum.  Without it, the result covers exactly the patterns that have a
    class occurring once or twice.

    ``method="block"`` builds the forms from a symmetric leading block, a
    border and a trailing block taken from a complete list of nonsymmetric
    normal patterns of smaller order; ``method="grid"`` backtracks over the
    whole grid with the border cells tied to their mirrors.
    """
    if cfg.strategy != "lemma6-reduction":
        cfg = _replace(cfg, strategy="lemma6-reduction")
    n = cfg.order
    if require_pigeonhole and not pigeonhole_holds(n, cfg.min_classes):
        raise DomainError(
            f"3 * {cfg.min_classes} <= {n * n}: a class of size <= 2 is not guaranteed, "
            "so the bordered-form reduction would be unsound"
        )
    if n < 2:
        return _finish(cfg, True, _Found(), 0, Counter())
    if method == "grid":
        specs = bordered_specs(n)
        return _grid_search(cfg, [specs["i"], specs["ii-first"], specs["ii-second"]])
    if method != "block":
        raise DomainError(f"unknown method {method!r}")
    return _block_bordered_search(cfg)


def nonsymmetric_normal_classes(m: int, min_classes: int, budget: int = DEFAULT_BUDGET):
    """Canonical representatives of nonsymmetric normal patterns of order m.

    Returns ``(patterns, completed, nodes)``.
    """
    if m < 2:
        return [], True, 0
    min_classes = max(min_classes, 1)
    if m <= 3:
        r = exhaustive_search(SearchConfig(m, min_classes=min_classes, strategy="exhaustive-rgs", node_budget=budget))
    else:
        r = pruned_search(SearchConfig(m, min_classes=min_classes, node_budget=budget))
    reps = [Pattern(m, key) for k in sorted(r.keys_by_k) for key in r.keys_by_k[k]]
    return reps, r.completed, r.nodes_visited


def _row_commutes(v, block, block_t) -> bool:
    """``v B == v Bt`` for a row v of labels, as polynomials."""
    m = len(v)
    for q in range(m):
        left = Counter()
        for r in range(m):
            a, b = v[r], block[r][q]
            left[(a, b) if a <= b else (b, a)] += 1
        for r in range(m):
            a, b = v[r], block_t[r][q]
            key = (a, b) if a <= b else (b, a)
            left[key] -= 1
            if left[key] < 0:
                return False
    return True


def _block_bordered_search(cfg: SearchConfig) -> SearchReport:
    """Bordered forms assembled as ``[[B1, B2], [B2t, B3]]``.

    ``B1`` is the symmetric 1x1 or 2x2 head holding the rare class, so the
    pattern is normal iff ``B3`` is normal and every row ``v`` of ``B2``
    satisfies ``v B3 == v B3t``, and it is nonsymmetric iff ``B3`` is.  ``B3``
    runs over canonical representatives, which is enough because any
    permutation of the trailing indices keeps the form.
    """
    n = cfg.order
    found = _Found()
    pruned: Counter = Counter()
    nodes = 0
    completed = True
    for head in (1, 2):
        m = n - head
        if m < 2:
            continue
        # classes outside the trailing block: the rare class, head extras, border
        extra = 1 + (2 if head == 2 else 0) + head * m
        reps, done, sub_nodes = nonsymmetric_normal_classes(m, cfg.min_classes - extra, cfg.node_budget)
        nodes += sub_nodes
        if not done or nodes > cfg.node_budget:
            return _finish(cfg, False, found, min(nodes, cfg.node_budget), pruned)
        forms = ["i"] if head == 1 else ["ii-first", "ii-second"]
        for b3 in reps:
            for form in forms:
                try:
                    nodes = _extend_block(cfg, form, b3, found, pruned, nodes)
                except _BudgetExceeded:
                    return _finish(cfg, False, found, cfg.node_budget, pruned)
    return _finish(cfg, completed, found, nodes, pruned)


def _extend_block(cfg, form, b3: Pattern, found, pruned, nodes) -> int:
    n = cfg.order
    m = b3.order
    head = n - m
    block = b3.rows()
    block_t = [tuple(col) for col in zip(*block)]
    kb = b3.class_count
    rare = kb  # label of the class occurring once or twice
    # free head entries: the off-diagonal pair (first form) or both diagonal cells (second)
    head_free = 0 if form == "i" else (1 if form == "ii-first" else 2)

    def vectors(length, nxt):
        """Label vectors over B3's labels, earlier new labels and fresh ones."""
        vec = []

        def rec(pos, nxt):
            if pos == length:
                yield tuple(vec), nxt
                return
            for lab in range(nxt + 1):
                if lab == rare:
                    continue
                vec.append(lab)
                yield from rec(pos + 1, nxt + 1 if lab == nxt else nxt)
                vec.pop()

        yield from rec(0, nxt)

    def assemble(rows, head_vals):
        grid = [[None] * n for _ in range(n)]
        for p in range(m):
            for q in range(m):
                grid[head + p][head + q] = block[p][q]
        for h in range(head):
            for q in range(m):
                grid[h][head + q] = grid[head + q][h] = rows[h][q]
        if form == "i":
            grid[0][0] = rare
        elif form == "ii-first":
            grid[0][0] = grid[1][1] = rare
            grid[0][1] = grid[1][0] = head_vals[0]
        else:
            grid[0][1] = grid[1][0] = rare
            grid[0][0], grid[1][1] = head_vals
        return tuple(v for row in grid for v in row)

    def rec_rows(h, rows, nxt):
        nonlocal nodes
        if h == head:
            for head_vals, last in vectors(head_free, nxt):
                nodes += 1
                if nodes > cfg.node_budget:
                    raise _BudgetExceeded
                # labels used: B3's, the rare class, and new ones below `last`
                if kb + 1 + (last - kb - 1) < cfg.min_classes:
                    pruned["class-bound"] += 1
                    continue
                _leaf(assemble(rows, head_vals), n, cfg, found, pruned)
            return
        for vec, after in vectors(m, nxt):
            nodes += 1
            if nodes > cfg.node_budget:
                raise _BudgetExceeded
            remaining = (head - h - 1) * m + head_free
            if after + remaining < cfg.min_classes:
                pruned["class-bound"] += 1
                continue
            if not _row_commutes(vec, block, block_t):
                pruned["block-criterion"] += 1
                continue
            rec_rows(h + 1, rows + [vec], after)

    rec_rows(0, [], kb + 1)
    return nodes


# -- catalog cover ------------------------------------------------------------


def occupancy_profiles(total: int, parts: int, min_part: int = 1) -> list[tuple[int, ...]]:
    """Non-increasing tuples of ``parts`` integers >= min_part summing to total."""
    out = []

    def rec(remaining, count, cap, acc):
        if count == 0:
            if remaining == 0:
                out.append(tuple(acc))
            return
        lo = min_part
        hi = min(cap, remaining - (count - 1) * min_part)
        for x in range(hi, lo - 1, -1):
            acc.append(x)
            rec(remaining - x, count - 1, x, acc)
            acc.pop()

    rec(total, parts, total, [])
    return out


@lru_cache(maxsize=None)
def _indexed_catalog(n: int, m: int):
    """Catalog entries (mask, rows, cols) grouped by their lowest cell."""
    by_low: dict[int, list] = {}
    for b in catalog_for_occupancy(n, m):
        mask = b.cell_mask()
        low = (mask & -mask).bit_length() - 1
        by_low.setdefault(low, []).append((mask, b.rows, b.columns()))
    return by_low


def _cover_shard(args):
    n, cfg, first, sizes, budget = args
    n2 = n * n
    full = (1 << n2) - 1
    m0 = first[0]
    placed = [first[1:]]
    covered = first[1]
    found = _Found()
    pruned: Counter = Counter()
    nodes = 0
    catalogs = [(m, _indexed_catalog(n, m)) for m in sizes if m >= m0]

    def rec(covered, count):
        nonlocal nodes
        remaining = n2 - covered.bit_count()
        if remaining == 0:
            if count < cfg.min_classes:
                return
            cells = [0] * n2
            for label, (mask, _, _) in enumerate(placed):
                while mask:
                    low = mask & -mask
                    cells[low.bit_length() - 1] = label
                    mask ^= low
            _leaf(tuple(cells), n, cfg, found, pruned)
            return
        if count + remaining // m0 < cfg.min_classes:
            pruned["class-bound"] += 1
            return
        if remaining < m0:
            return
        low_cell = ((~covered & full) & -(~covered & full)).bit_length() - 1
        for m, by_low in catalogs:
            if m > remaining:
                break
            for mask, rows, cols in by_low.get(low_cell, ()):
                if mask & covered:
                    continue
                nodes += 1
                if nodes > budget:
                    raise _BudgetExceeded
                if all(_pair_ok(rows, cols, r, c) for _, r, c in placed):
                    placed.append((mask, rows, cols))
                    rec(covered | mask, count + 1)
                    placed.pop()
                else:
                    pruned["pair-condition"] += 1

    try:
        rec(covered, 1)
        done = True
    except _BudgetExceeded:
        done = False
        nodes = budget
    return nodes, pruned, found, done


def catalog_cover_search(cfg: SearchConfig) -> SearchReport:
    """Assemble patterns from disjoint normal 0-1 matrices covering the grid.

    The first class placed is a smallest class of the pattern, taken as the
    canonical representative of its similarity class; the remaining cells
    are covered in order of their lowest uncovered cell.  ``cfg.min_part``
    bounds every class size from below.
    """
    if cfg.strategy != "catalog-cover":
        cfg = _replace(cfg, strategy="catalog-cover")
    n = cfg.order
    n2 = n * n
    kmin = max(cfg.min_classes, 1)
    largest = n2 - (kmin - 1) * cfg.min_part
    sizes = [m for m in range(cfg.min_part, largest + 1)]
    if not sizes:
        return _finish(cfg, True, _Found(), 0, Counter())
    jobs = []
    for m0 in sizes:
        if m0 * kmin > n2:
            break
        for cls in classify_normal_binary(n, m0).classes:
            rep = cls.representative
            jobs.append((n, cfg, (m0, rep.cell_mask(), rep.rows, rep.columns()), sizes, cfg.node_budget))
    found = _Found()
    pruned: Counter = Counter()
    nodes = 0
    completed = True
    if cfg.worker_count > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            results = list(pool.map(_cover_shard, jobs))
    else:
        results = (_cover_shard(job) for job in jobs)
    for shard_nodes, shard_pruned, shard_found, done in results:
        nodes += shard_nodes
        if nodes > cfg.node_budget or not done:
            nodes = min(nodes, cfg.node_budget)
            completed = False
            break
        pruned.update(shard_pruned)
        found.merge(shard_found)
    return _finish(cfg, completed, found, nodes, pruned)


def run_search(cfg: SearchConfig) -> SearchReport:
    return {
        "exhaustive-rgs": exhaustive_search,
        "pruned-dfs": pruned_search,
        "lemma6-reduction": lemma6_reduction_search,
        "catalog-cover": catalog_cover_search,
    }[cfg.strategy](cfg)


# -- theorem verification ------------------------------------------------------


@dataclass
class VerifyReport:
    order: int
    bound: int | None
    verdict: str  # verified | degenerate | inconclusive | falsified
    strata: dict[str, SearchReport]
    cross_checks: dict[str, SearchReport]
    extremal_key: tuple[int, ...] | None
    messages: list[str]

    def to_dict(self) -> dict:
        def brief(r: SearchReport) -> dict:
            d = r.to_dict()
            d["strategy"] = r.config.strategy
            return d

        return {
            "order": self.order,
            "bound": self.bound,
            "verdict": self.verdict,
            "extremal_key": list(self.extremal_key) if self.extremal_key else None,
            "strata": {name: brief(r) for name, r in self.strata.items()},
            "cross_checks": {name: brief(r) for name, r in self.cross_checks.items()},
            "messages": self.messages,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [
            f"order: {self.order}",
            f"bound: {_text_value(self.bound)}",
            f"verdict: {self.verdict}",
            "extremal_key: " + (" ".join(map(str, self.extremal_key)) if self.extremal_key else "none"),
        ]
        for group, reports in (("stratum", self.strata), ("cross_check", self.cross_checks)):
            for name, r in reports.items():
                counts = " ".join(f"{k}={v}" for k, v in sorted(r.counts_by_k.items())) or "-"
                lines.append(
                    f"{group}[{name}]: strategy={r.config.strategy} min_classes={r.config.min_classes} "
                    f"completed={_text_value(r.completed)} counts_by_k={counts} "
                    f"nodes_visited={r.nodes_visited}"
                )
        lines += [f"message: {m}" for m in self.messages]
        return "\n".join(lines) + "\n"


def verify_theorem(n: int, budget: int = DEFAULT_BUDGET, workers: int = 1, cross_check: bool = True) -> VerifyReport:
    """Check the bound n(n-3)/2 + 3 and uniqueness of the extremal class at order n.

    Strata (each must complete for a "verified" verdict):

    * n <= 3: every pattern, exhaustively;
    * n = 4, 5: above the bound via the bordered forms (sound since
      3 * (bound + 1) > n*n); at the bound, patterns with a class of size
      <= 2 via the bordered forms plus patterns whose classes all have size
      >= 3 via catalog cover.

    Cross-checks do not decide the verdict unless they contradict it; at
    n = 5 the only one is a pruned-dfs run capped at N5_CROSS_CHECK_BUDGET
    nodes, which is reported as incomplete.
    """
    if not 2 <= n <= 5:
        raise DomainError(f"verification supports 2 <= n <= 5, got {n}")
    strata: dict[str, SearchReport] = {}
    checks: dict[str, SearchReport] = {}
    messages: list[str] = []

    def cfg(strategy, min_classes, **kw):
        return SearchConfig(n, min_classes=min_classes, node_budget=budget, strategy=strategy,
                            worker_count=workers, **kw)

    if n == 2:
        r = exhaustive_search(cfg("exhaustive-rgs", 1))
        strata["all"] = r
        if not r.completed:
            return VerifyReport(n, None, "inconclusive", strata, checks, None, ["exhaustive sweep hit the budget"])
        if r.counts_by_k:
            messages.append("nonsymmetric normal 2x2 pattern found")
            return VerifyReport(n, None, "falsified", strata, checks, None, messages)
        messages.append("no nonsymmetric normal pattern of order 2 exists")
        return VerifyReport(n, None, "degenerate", strata, checks, None, messages)

    bound = extremal_class_count(n)
    target = canonical_key(extremal(n)).cells
    if n == 3:
        strata["all"] = exhaustive_search(cfg("exhaustive-rgs", 1))
        if cross_check:
            checks["above-bound lemma6-reduction"] = lemma6_reduction_search(cfg("lemma6-reduction", bound + 1))
            checks["pruned-dfs"] = pruned_search(cfg("pruned-dfs", 1))
        at_bound = ["all"]
    else:
        strata["above-bound"] = lemma6_reduction_search(cfg("lemma6-reduction", bound + 1))
        strata["at-bound, some class of size <= 2"] = lemma6_reduction_search(
            cfg("lemma6-reduction", bound), require_pigeonhole=False
        )
        strata["at-bound, all classes of size >= 3"] = catalog_cover_search(cfg("catalog-cover", bound, min_part=3))
        at_bound = ["at-bound, some class of size <= 2", "at-bound, all classes of size >= 3"]
        if cross_check:
            if n == 4:
                checks["pruned-dfs"] = pruned_search(cfg("pruned-dfs", bound))
                checks["catalog-cover, all profiles"] = catalog_cover_search(cfg("catalog-cover", bound))
                checks["above-bound lemma6-reduction, grid"] = lemma6_reduction_search(
                    cfg("lemma6-reduction", bound + 1), method="grid"
                )
            else:
                # full cross-checks are out of reach at n = 5; run a capped
                # pruned-dfs so the report still shows how far it got
                capped = SearchConfig(n, min_classes=bound, node_budget=min(budget, N5_CROSS_CHECK_BUDGET),
                                      worker_count=workers)
                checks["pruned-dfs"] = pruned_search(capped)

    falsified = False
    for name, r in {**strata, **checks}.items():
        over = {k: v for k, v in r.counts_by_k.items() if k > bound}
        if over:
            falsified = True
            messages.append(f"{name}: nonsymmetric normal patterns above the bound: {over}")
        stray = [key for key in r.keys_by_k.get(bound, []) if key != target]
        if stray:
            falsified = True
            messages.append(f"{name}: {len(stray)} non-extremal classes at the bound: {stray[:5]}")
    found_at_bound = set()
    for name in at_bound:
        found_at_bound.update(strata[name].keys_by_k.get(bound, []))
    for name, r in checks.items():
        if r.config.min_classes > bound:
            continue
        if r.completed and target not in r.keys_by_k.get(bound, []):
            falsified = True
            messages.append(f"{name}: completed without meeting the extremal class")
    incomplete = [name for name, r in strata.items() if not r.completed]
    for name, r in checks.items():
        if not r.completed:
            messages.append(f"cross-check {name} incomplete under its budget of {r.config.node_budget} nodes")
    if falsified:
        verdict = "falsified"
    elif incomplete:
        verdict = "inconclusive"
        messages.append("incomplete strata: " + ", ".join(incomplete))
        if target in found_at_bound:
            messages.append("the extremal class was found at the bound")
    elif found_at_bound == {target}:
        verdict = "verified"
    else:
        verdict = "falsified"
        messages.append("no nonsymmetric normal pattern attains the bound")
    return VerifyReport(n, bound, verdict, strata, checks, target, messages)
