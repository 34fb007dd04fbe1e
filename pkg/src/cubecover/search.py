"""Budgeted search for distinct DNF tautologies.

Two problems share one engine:

* ``search_distinct``: every support has size >= k, supports pairwise distinct;
* ``search_uniform``: every support has size exactly m, supports distinct.

The candidate universe is a list of supports in increasing size, then
lexicographic order.  A search node decides, for the next support, either one
sign pattern or to skip it.  Sign patterns are tried by decreasing number of
newly covered vertices, ties broken by their Gray-code position.

Gains of all sign patterns of one support are counted in a single pass: each
uncovered vertex is projected onto the support and the projections are
histogrammed.  Small supports use packed bitmasks instead.

Symmetry: flipping any variable maps solutions to solutions, so the signs of a
chosen term on variables no earlier chosen term touched are fixed to 0.

Strategies:

``greedy``
    Repeatedly take the (support, signs) covering most new vertices.
``backtracking``
    Depth-first search for a full cover; a node is pruned when the remaining
    supports, each contributing at most ``2^(n-|S|)`` vertices, cannot close
    the deficit.
``exhaustive``
    Branch and bound maximizing coverage, seeded with the greedy incumbent.
    Completion proves the optimum, so a failed search is a proof of
    impossibility.

For parallel runs and reproducibility the tree is cut at a fixed depth into
subtrees.  Each subtree gets an equal share of the node budget and is
searched independently; the first subtree (in DFS order) that finds a
tautology wins, otherwise the best partial cover is chosen by uncovered count
and then canonical DNF order.  The worker count therefore never changes the
outcome, only the wall-clock time.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import chain, combinations

import numpy as np

from .boolean import (
    DnfExpression,
    PointSet,
    Term,
    density_bound_A,
    density_bound_B,
    is_distinct_dnf,
    is_tautology,
    pigeonhole_min_size,
    pigeonhole_tautology,
    subcube_mask,
    check_dimension,
)
from .boxcover import ComparisonMode
from .errors import IntegrityError, SearchSpaceTooLarge

TIME_CHECK_EVERY = 256


class Strategy(enum.Enum):
    GREEDY = "greedy"
    BACKTRACKING = "backtracking"
    EXHAUSTIVE = "exhaustive"


class Status(enum.Enum):
    TAUTOLOGY = "Tautology"
    BEST_EFFORT = "BestEffort"
    PROVED_IMPOSSIBLE = "ProvedImpossible"


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one search run.

    ``size`` is the minimum term size ``k`` (``uniform=False``) or the common
    term size ``m`` (``uniform=True``).  ``time_limit`` is in seconds; either
    limit may be ``None`` but not both.
    """

    n: int
    size: int
    uniform: bool = False
    strategy: Strategy = Strategy.BACKTRACKING
    time_limit: float | None = 60.0
    node_limit: int | None = 10_000_000
    seed: int = 0
    workers: int = 1
    force_search: bool = False
    exhaustive_term_cap: int = 4096
    split_depth: int = 3
    min_subtrees: int = 16

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        check_dimension(self.n)
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.size <= self.n:
            raise ValueError(f"size must lie in [0, n], got {self.size}")
        if self.time_limit is None and self.node_limit is None:
            raise ValueError("at least one of time_limit and node_limit is required")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.strategy is Strategy.EXHAUSTIVE and self.term_universe() > self.exhaustive_term_cap:
            raise SearchSpaceTooLarge(
                f"exhaustive search over {self.term_universe()} candidate terms exceeds "
                f"the cap of {self.exhaustive_term_cap}"
            )

    def sizes(self):
        return [self.size] if self.uniform else list(range(self.size, self.n + 1))

    def term_universe(self):
        """Number of candidate (support, signs) pairs."""
        from math import comb
        return sum(comb(self.n, s) << s for s in self.sizes())

    def to_json(self):
        return {
            "n": self.n,
            "k_or_m": self.size,
            "uniform": self.uniform,
            "strategy": self.strategy.value,
            "time_limit": self.time_limit,
            "node_limit": self.node_limit,
            "seed": self.seed,
            "workers": self.workers,
            "force_search": self.force_search,
        }


@dataclass(frozen=True)
class SearchOutcome:
    best: DnfExpression
    uncovered_count: int
    status: Status
    nodes_explored: int
    elapsed: float
    config: SearchConfig
    proof: str | None = None  # "density" or "exhaustive" when ProvedImpossible
    source: str = "search"  # "search" or "pigeonhole"

    def to_json(self):
        return {
            "status": self.status.value,
            "n": self.config.n,
            "k_or_m": self.config.size,
            "problem": "uniform" if self.config.uniform else "distinct",
            "uncovered_count": self.uncovered_count,
            "terms": self.best.to_json()["terms"],
            "nodes_explored": self.nodes_explored,
            "elapsed_s": self.elapsed,
            "seed": self.config.seed,
            "strategy": self.config.strategy.value,
            "proof": self.proof,
            "source": self.source,
        }


# -- candidate universe -------------------------------------------------------

def gray_code(i):
    return i ^ (i >> 1)


@dataclass(frozen=True)
class Universe:
    n: int
    supports: tuple[tuple[int, ...], ...]
    cares: tuple[int, ...]
    capacities: tuple[int, ...]
    suffix_capacity: tuple[int, ...]

    @classmethod
    def build(cls, n, sizes):
        supports = [support for s in sizes for support in combinations(range(n), s)]
        cares = [sum(1 << i for i in support) for support in supports]
        caps = [1 << (n - len(support)) for support in supports]
        suffix = [0] * (len(caps) + 1)
        for i in range(len(caps) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + caps[i]
        return cls(n, tuple(supports), tuple(cares), tuple(caps), tuple(suffix))

    @property
    def full(self):
        return (1 << (1 << self.n)) - 1

    @property
    def target(self):
        return 1 << self.n

    def patterns(self, idx):
        """Value masks of support ``idx`` in Gray-code order."""
        return _support_patterns(self.supports[idx])[0]

    def gains(self, idx, vertices):
        """Newly covered count of every pattern of support ``idx``, in Gray-code order.

        ``vertices`` are the uncovered vertex indices.  One ``bincount`` over
        the projections onto the support replaces a mask per pattern.
        """
        support = self.supports[idx]
        key = np.zeros(len(vertices), dtype=np.int64)
        for j, var in enumerate(support):
            key |= ((vertices >> var) & 1) << j
        counts = np.bincount(key, minlength=1 << len(support))
        return counts[_gray_sequence(len(support))]

    def term(self, care, value):
        return Term.from_masks(self.n, care, value)

    def mask(self, care, value):
        return subcube_mask(self.n, care, value)


@lru_cache(maxsize=None)
def _gray_sequence(s):
    return np.array([gray_code(g) for g in range(1 << s)], dtype=np.int64)


@lru_cache(maxsize=1 << 12)
def _support_patterns(support):
    vals = [sum(1 << v for j, v in enumerate(support) if code >> j & 1)
            for code in _gray_sequence(len(support)).tolist()]
    return tuple(vals), np.array(vals, dtype=np.int64)


# vectorised gains pay off once a support has this many sign patterns
VECTOR_PATTERNS = 64


def _uncovered_vertices(covered, n):
    return np.flatnonzero(~PointSet(n, covered).to_array())


def _to_dnf(universe, chosen):
    return DnfExpression(universe.n, tuple(universe.term(c, v) for c, v in chosen)).sorted()


# -- greedy -----------------------------------------------------------------------

def greedy_cover(universe: Universe, covered=0, used=(), deadline=None):
    """Lazy greedy maximum coverage; returns ``(chosen, covered)``.

    Gains only shrink as coverage grows, so stale gains are valid upper bounds
    and a support is only re-evaluated when it reaches the top of the heap.
    Ties go to the earliest support, then the earliest Gray-code pattern.
    Stops early, with a partial cover, once ``deadline`` passes.
    """
    import heapq

    n, full = universe.n, universe.full
    vertices = np.arange(1 << n, dtype=np.int64)
    free = vertices[~PointSet(n, covered).to_array()]
    used = set(used)
    heap = [(-cap, idx) for idx, cap in enumerate(universe.capacities) if idx not in used]
    heapq.heapify(heap)
    chosen = []
    while heap and covered != full:
        if deadline is not None and time.perf_counter() > deadline:
            break
        neg_bound, idx = heapq.heappop(heap)
        gains = universe.gains(idx, free)
        pos = int(np.argmax(gains))
        best_gain = int(gains[pos])
        if best_gain == 0:
            continue
        if heap and (-best_gain, idx) > heap[0]:
            heapq.heappush(heap, (-best_gain, idx))
            continue
        care, val = universe.cares[idx], universe.patterns(idx)[pos]
        chosen.append((care, val))
        covered |= universe.mask(care, val)
        free = free[(free & care) != val]
    return chosen, covered


# -- depth-first engine ----------------------------------------------------------

class _BudgetExhausted(Exception):
    pass


@dataclass
class _Node:
    idx: int
    covered: int
    fixed: int
    chosen: tuple


@dataclass
class _SubtreeResult:
    chosen: tuple
    covered_count: int
    nodes: int
    complete: bool
    found: bool


_DONE = object()


class _Engine:
    """DFS over one subtree.  ``optimize`` switches to branch and bound."""

    def __init__(self, universe, optimize, node_limit, deadline, incumbent=0):
        self.u = universe
        self.optimize = optimize
        self.node_limit = node_limit
        self.deadline = deadline
        self.full = universe.full
        self.target = universe.target
        self.nodes = 0
        self.best_count = incumbent
        self.best_chosen = None
        self.found = False

    def options(self, node):
        """Moves from ``node`` in search order: ``(care, value)`` by gain, then ``None`` (skip)."""
        u = self.u
        idx = node.idx
        care = u.cares[idx]
        free_vars = care & ~node.fixed
        vals, vals_arr = _support_patterns(u.supports[idx])
        if len(vals) >= VECTOR_PATTERNS:
            gains = u.gains(idx, _uncovered_vertices(node.covered, u.n))
            ok = np.flatnonzero((gains > 0) & ((vals_arr & free_vars) == 0))
            order = ok[np.argsort(-gains[ok], kind="stable")]
            moves = ((care, vals[pos]) for pos in order.tolist())
        else:
            uncovered = ~node.covered & self.full
            scored = []
            for pos, val in enumerate(vals):
                if val & free_vars:
                    continue
                gain = (u.mask(care, val) & uncovered).bit_count()
                if gain:
                    scored.append((-gain, pos, val))
            scored.sort()
            moves = ((care, val) for _, _, val in scored)
        return chain(moves, (None,))

    def child(self, node, move):
        if move is None:
            return _Node(node.idx + 1, node.covered, node.fixed, node.chosen)
        care, val = move
        return _Node(node.idx + 1, node.covered | self.u.mask(care, val), node.fixed | care,
                     node.chosen + (move,))

    def pruned(self, node, count):
        reach = count + self.u.suffix_capacity[node.idx]
        if self.optimize:
            return min(reach, self.target) <= self.best_count
        return reach < self.target

    def tick(self):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _BudgetExhausted
        if self.deadline is not None and self.nodes % TIME_CHECK_EVERY == 1:
            if time.perf_counter() > self.deadline:
                raise _BudgetExhausted

    def record(self, node, count):
        if count > self.best_count:
            self.best_count = count
            self.best_chosen = node.chosen

    def enter(self, node):
        """Count ``node``; returns True on a full cover, else its move iterator or None."""
        self.tick()
        count = node.covered.bit_count()
        self.record(node, count)
        if count == self.target:
            self.found = True
            return True
        if node.idx == len(self.u.cares) or self.pruned(node, count):
            return None
        return self.options(node)

    def visit(self, root):
        # explicit stack: the tree is as deep as the number of supports
        moves = self.enter(root)
        if moves is True:
            return True
        stack = [(root, moves)] if moves is not None else []
        while stack:
            node, moves = stack[-1]
            move = next(moves, _DONE)
            if move is _DONE:
                stack.pop()
                continue
            child = self.child(node, move)
            moves = self.enter(child)
            if moves is True:
                return True
            if moves is not None:
                stack.append((child, moves))
        return False

    def run(self, root):
        complete = True
        try:
            self.visit(root)
        except _BudgetExhausted:
            complete = False
        return _SubtreeResult(self.best_chosen, self.best_count, self.nodes, complete, self.found)


def _frontier(universe, max_depth, min_subtrees, optimize):
    """Cut the tree into subtrees; returns (frontier nodes, expansion node count).

    Whole levels are expanded until there are at least ``min_subtrees`` nodes
    or ``max_depth`` levels, so the cut depends only on the instance.
    """
    level = [_Node(0, 0, 0, ())]
    probe = _Engine(universe, optimize, None, None)
    nodes = 0
    for _ in range(max_depth):
        if len(level) >= min_subtrees:
            break
        nxt = []
        for node in level:
            nodes += 1
            count = node.covered.bit_count()
            if count == probe.target or node.idx == len(universe.cares):
                nxt.append(node)
                continue
            if not optimize and probe.pruned(node, count):
                continue
            nxt.extend(probe.child(node, move) for move in probe.options(node))
        level = nxt
    return level, nodes


def _run_subtree(args):
    universe, node, optimize, node_limit, deadline, incumbent = args
    return _Engine(universe, optimize, node_limit, deadline, incumbent).run(node)


def _dfs_search(universe, config, deadline, incumbent_chosen, incumbent_count):
    optimize = config.strategy is Strategy.EXHAUSTIVE
    frontier, nodes = _frontier(universe, config.split_depth, config.min_subtrees, optimize)
    if not frontier:
        return incumbent_chosen, incumbent_count, nodes, True, False
    share = None
    if config.node_limit is not None:
        share = max(1, (config.node_limit - nodes) // len(frontier))
    # backtracking tracks its own best partial from scratch
    incumbent = incumbent_count if optimize else -1
    jobs = [(universe, node, optimize, share, deadline, incumbent) for node in frontier]

    results = []
    if config.workers == 1:
        for job in jobs:
            res = _run_subtree(job)
            results.append(res)
            if res.found:
                break
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(_run_subtree, job) for job in jobs]
            for fut in futures:
                res = fut.result()
                results.append(res)
                if res.found:
                    break
            for fut in futures:
                fut.cancel()

    nodes += sum(r.nodes for r in results)
    complete = all(r.complete for r in results)
    if results and results[-1].found:
        r = results[-1]
        return r.chosen, r.covered_count, nodes, complete, True
    improved = [r for r in results if r.chosen is not None and r.covered_count > incumbent_count]
    if not improved:
        return incumbent_chosen, incumbent_count, nodes, complete, False
    best = min(improved, key=lambda r: (-r.covered_count, _to_dnf(universe, r.chosen).key()))
    return best.chosen, best.covered_count, nodes, complete, False


# -- public API -----------------------------------------------------------------

def _outcome(universe, config, chosen, covered_count, status, nodes, start, proof=None,
             source="search"):
    best = _to_dnf(universe, chosen or ())
    return SearchOutcome(
        best=best,
        uncovered_count=(1 << config.n) - covered_count,
        status=status,
        nodes_explored=nodes,
        elapsed=time.perf_counter() - start,
        config=config,
        proof=proof,
        source=source,
    )


def _search(config):
    start = time.perf_counter()
    deadline = None if config.time_limit is None else start + config.time_limit
    n, size = config.n, config.size
    universe = Universe.build(n, config.sizes())

    if config.uniform:
        feasible = size <= density_bound_B(n, ComparisonMode.WEAK)
    else:
        feasible = size <= density_bound_A(n, ComparisonMode.WEAK)

    if not feasible:
        chosen, covered = greedy_cover(universe, deadline=deadline)
        return _outcome(universe, config, chosen, covered.bit_count(),
                        Status.PROVED_IMPOSSIBLE, 0, start, proof="density")

    if not config.uniform and not config.force_search:
        reach = pigeonhole_min_size(n)
        if reach is not None and reach >= size:
            t = next(t for t in range(1, n + 1) if 2 * t != n and min(t, n - t) >= size)
            witness = pigeonhole_tautology(n, t).sorted()
            return SearchOutcome(witness, 0, Status.TAUTOLOGY, 0,
                                 time.perf_counter() - start, config, source="pigeonhole")

    chosen, covered = greedy_cover(universe, deadline=deadline)
    covered_count = covered.bit_count()
    nodes = 0
    complete = False
    if config.strategy is not Strategy.GREEDY and covered_count < universe.target:
        chosen, covered_count, nodes, complete, _ = _dfs_search(
            universe, config, deadline, chosen, covered_count)

    target = 1 << n
    if covered_count == target:
        status, proof = Status.TAUTOLOGY, None
    elif config.strategy is Strategy.EXHAUSTIVE and complete:
        status, proof = Status.PROVED_IMPOSSIBLE, "exhaustive"
    else:
        status, proof = Status.BEST_EFFORT, None
    out = _outcome(universe, config, chosen, covered_count, status, nodes, start, proof)
    if status is Status.TAUTOLOGY and not certify(out):
        raise IntegrityError(f"search returned an invalid witness: {out.best}")
    return out


def search_distinct(config: SearchConfig) -> SearchOutcome:
    """Distinct DNF tautology with every term of size >= ``config.size``."""
    if config.uniform:
        config = replace(config, uniform=False)
    return _search(config)


def search_uniform(config: SearchConfig) -> SearchOutcome:
    """Distinct DNF tautology with every term of size exactly ``config.size``."""
    if not config.uniform:
        config = replace(config, uniform=True)
    return _search(config)


def certify(outcome: SearchOutcome) -> bool:
    """Re-check a claimed witness from scratch with the boolean-cover primitives."""
    if outcome.status is not Status.TAUTOLOGY:
        raise ValueError(f"only Tautology outcomes can be certified, got {outcome.status.value}")
    cfg, dnf = outcome.config, outcome.best
    if dnf.n != cfg.n or not dnf.terms:
        return False
    if cfg.uniform:
        sizes_ok = all(t.size == cfg.size for t in dnf.terms)
    else:
        sizes_ok = all(t.size >= cfg.size for t in dnf.terms)
    return sizes_ok and is_distinct_dnf(dnf) and is_tautology(dnf)
