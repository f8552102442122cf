"""Exact tree-depth with certificates, plus an independent brute-force oracle.

The exact solver runs the standard recursion (a single vertex has depth 1,
a disconnected graph takes the maximum over components, and a connected
graph takes 1 + min over vertex removals) as a memoized branch-and-bound
over vertex subsets of a fixed root graph. Every subproblem of the
recursion is a connected induced subgraph, so the memo key is just the
subset mask, one machine word.

The brute-force oracle searches the space of labelings instead of the space
of elimination orders, which keeps the two routes to a tree-depth value
independent of each other.

Determinism: branch order is decreasing degree with lowest index breaking
ties, and the witness assigns the removed vertex the highest rank of its
subproblem, so identical inputs always produce identical certificates.
"""

from __future__ import annotations

import threading
import time
from collections import OrderedDict
from dataclasses import dataclass

from .graphs import Graph, bit_indices, component_masks, component_of
from .ranking import Ranking

BRUTE_FORCE_MAX_VERTICES = 8


@dataclass(frozen=True)
class SolverConfig:
    """Resource limits and execution options for the exact solver.

    `threads` is consumed by the report-level operations (per-minor and
    per-vertex solves run in a pool); the subset search itself is sequential.
    `memo_capacity` caps the number of memo entries and acts as a resource
    budget like the node and time budgets.
    """

    node_budget: int | None = None
    time_budget: float | None = None
    threads: int = 1
    memo_capacity: int | None = None


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class SolverStats:
    nodes: int
    memo_entries: int
    elapsed: float


@dataclass(frozen=True)
class Bounds:
    """Certified enclosure: lower <= td(G) <= upper."""

    lower: int
    upper: int


@dataclass(frozen=True)
class TdCertificate:
    """Exact tree-depth plus a witness ranking that attains it."""

    value: int
    witness: Ranking
    stats: SolverStats


class BudgetExceededError(Exception):
    """A resource budget ran out; `bounds` still encloses the true value."""

    def __init__(self, message: str, bounds: Bounds, stats: SolverStats):
        super().__init__(message)
        self.bounds = bounds
        self.stats = stats


class _BudgetHit(Exception):
    pass


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def _dfs_height(adj: tuple[int, ...], mask: int, root: int) -> int:
    """Height in vertices of the DFS tree from `root` inside `mask`.

    Neighbours are explored in ascending order, so the value is
    deterministic. Every non-tree edge of a DFS tree joins an ancestor to a
    descendant, hence labeling each vertex with height - depth + 1 is
    feasible and the height is an upper bound for the tree-depth.
    """
    visited = 1 << root
    depth = {root: 1}
    stack = [root]
    height = 1
    while stack:
        u = stack[-1]
        free = adj[u] & mask & ~visited
        if free:
            w = (free & -free).bit_length() - 1
            visited |= 1 << w
            d = depth[u] + 1
            depth[w] = d
            if d > height:
                height = d
            stack.append(w)
        else:
            stack.pop()
    return height


def _greedy_clique(adj: tuple[int, ...], mask: int) -> int:
    order = sorted(
        bit_indices(mask), key=lambda v: (-(adj[v] & mask).bit_count(), v)
    )
    clique = 0
    for v in order:
        if clique & ~adj[v] == 0:
            clique |= 1 << v
    return clique.bit_count()


def _is_clique(adj: tuple[int, ...], mask: int) -> bool:
    m = mask
    while m:
        low = m & -m
        if adj[low.bit_length() - 1] & mask != mask ^ low:
            return False
        m ^= low
    return True


class _Search:
    """Memoized branch-and-bound over connected vertex subsets of one graph."""

    __slots__ = ("adj", "n", "config", "memo", "nodes", "_start", "_deadline", "_cert")

    def __init__(self, g: Graph, config: SolverConfig):
        self.adj = g.adj
        self.n = g.n
        self.config = config
        self.memo: dict[int, int] = {}
        self.nodes = 0
        self._start = time.monotonic()
        self._deadline = (
            None if config.time_budget is None else self._start + config.time_budget
        )
        self._cert: TdCertificate | None = None

    # -- resource accounting -------------------------------------------------

    def _tick(self) -> None:
        self.nodes += 1
        cfg = self.config
        if cfg.node_budget is not None and self.nodes > cfg.node_budget:
            raise _BudgetHit(f"node budget of {cfg.node_budget} exhausted")
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise _BudgetHit(f"time budget of {cfg.time_budget}s exhausted")
        if cfg.memo_capacity is not None and len(self.memo) >= cfg.memo_capacity:
            raise _BudgetHit(f"memo capacity of {cfg.memo_capacity} exhausted")

    def stats(self) -> SolverStats:
        return SolverStats(self.nodes, len(self.memo), time.monotonic() - self._start)

    # -- exact values ----------------------------------------------------------

    def solve_set(self, mask: int) -> int:
        return max(self.solve_conn(c) for c in component_masks(self.adj, mask))

    def solve_conn(self, mask: int) -> int:
        """Exact tree-depth of the connected induced subgraph on `mask`."""
        memo = self.memo
        val = memo.get(mask)
        if val is not None:
            return val
        self._tick()
        adj = self.adj
        cnt = mask.bit_count()
        if cnt <= 2 or _is_clique(adj, mask):
            memo[mask] = cnt
            return cnt
        root = (mask & -mask).bit_length() - 1
        height = _dfs_height(adj, mask, root)
        best = height
        lb = max(_greedy_clique(adj, mask), _ceil_log2(height + 1))
        if lb < best:
            order = sorted(
                bit_indices(mask),
                key=lambda v: (-(adj[v] & mask).bit_count(), v),
            )
            for v in order:
                rest = mask ^ (1 << v)
                comps = component_masks(adj, rest)
                guess = 0
                for c in comps:
                    known = memo.get(c)
                    guess = max(guess, known if known is not None else self._cheap_lb(c))
                if 1 + guess >= best:
                    continue
                worst = 0
                for c in sorted(comps, key=lambda c: -c.bit_count()):
                    worst = max(worst, self.solve_conn(c))
                    if 1 + worst >= best:
                        break
                if 1 + worst < best:
                    best = 1 + worst
                    if best <= lb:
                        break
        memo[mask] = best
        return best

    def _cheap_lb(self, comp: int) -> int:
        cnt = comp.bit_count()
        if cnt <= 2:
            return cnt
        if _is_clique(self.adj, comp):
            return cnt
        return 2

    # -- witness ---------------------------------------------------------------

    def witness_assignment(self, mask: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for comp in component_masks(self.adj, mask):
            self._witness_conn(comp, out)
        return out

    def _witness_conn(self, mask: int, out: dict[int, int]) -> None:
        # Second pass over solved subproblems: pick the first branch vertex
        # (in branch order) that attains the optimum, give it the top rank of
        # this subproblem, and recurse into the remaining components.
        adj = self.adj
        if mask.bit_count() == 1:
            out[mask.bit_length() - 1] = 1
            return
        target = self.solve_conn(mask)
        order = sorted(
            bit_indices(mask), key=lambda v: (-(adj[v] & mask).bit_count(), v)
        )
        for v in order:
            rest = mask ^ (1 << v)
            comps = component_masks(adj, rest)
            if 1 + max(self.solve_conn(c) for c in comps) == target:
                out[v] = target
                for c in comps:
                    self._witness_conn(c, out)
                return
        raise AssertionError("no removal attains the memoized optimum")

    def certificate(self) -> TdCertificate:
        if self._cert is None:
            full = (1 << self.n) - 1
            value = self.solve_set(full)
            assignment = self.witness_assignment(full)
            labels = tuple(assignment[v] for v in range(self.n))
            self._cert = TdCertificate(value, Ranking(labels, value), self.stats())
        return self._cert


# Default-configuration searches are cached per graph so that repeated calls
# (including treedepth_le after treedepth) share one memo store. Concurrent
# solves on one shared search are safe: every writer computes the identical
# value for a memo key, so lookup/insert only needs the dict's own atomicity.
_SEARCH_CACHE_SIZE = 4096
_search_cache: OrderedDict[Graph, _Search] = OrderedDict()
_search_cache_lock = threading.Lock()


def _search_for(g: Graph, config: SolverConfig | None) -> _Search:
    if config is not None and config != DEFAULT_CONFIG:
        return _Search(g, config)
    with _search_cache_lock:
        hit = _search_cache.get(g)
        if hit is not None:
            _search_cache.move_to_end(g)
            return hit
        search = _Search(g, DEFAULT_CONFIG)
        _search_cache[g] = search
        if len(_search_cache) > _SEARCH_CACHE_SIZE:
            _search_cache.popitem(last=False)
    return search


def treedepth(g: Graph, config: SolverConfig | None = None) -> TdCertificate:
    """Exact tree-depth of g with a verified witness ranking.

    Raises BudgetExceededError (carrying certified Bounds) when a configured
    resource budget runs out before the exact value is known.
    """
    search = _search_for(g, config)
    try:
        return search.certificate()
    except _BudgetHit as hit:
        raise BudgetExceededError(str(hit), bounds(g), search.stats()) from None


def treedepth_le(g: Graph, k: int, config: SolverConfig | None = None) -> bool:
    """Decision form: is td(g) <= k? Shares the memo store with treedepth."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k == 0:
        return False
    if k >= g.n:
        return True
    quick = bounds(g)
    if quick.upper <= k:
        return True
    if quick.lower > k:
        return False
    search = _search_for(g, config)
    try:
        return search.solve_set(g.full_mask()) <= k
    except _BudgetHit as hit:
        raise BudgetExceededError(str(hit), quick, search.stats()) from None


def _max_clique(adj: tuple[int, ...], mask: int) -> int:
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = max(best, size)
            return
        low = cand & -cand
        grow(cand & adj[low.bit_length() - 1], size + 1)
        grow(cand ^ low, size)

    grow(mask, 0)
    return best


_EXACT_CLIQUE_MAX = 20


def bounds(g: Graph) -> Bounds:
    """Cheap certified bounds: clique and longest-DFS-path below, DFS height above."""
    adj = g.adj
    full = g.full_mask()
    upper = 0
    for comp in component_masks(adj, full):
        root = (comp & -comp).bit_length() - 1
        upper = max(upper, _dfs_height(adj, comp, root))
    longest = 0
    for v in range(g.n):
        longest = max(longest, _dfs_height(adj, full, v) - 1)
    if g.n <= _EXACT_CLIQUE_MAX:
        clique = _max_clique(adj, full)
    else:
        clique = max(_greedy_clique(adj, comp) for comp in component_masks(adj, full))
    return Bounds(max(clique, _ceil_log2(longest + 2)), upper)


# ---------------------------------------------------------------------------
# Labeling-space search: the independent oracle machinery.
# ---------------------------------------------------------------------------

def search_feasible_labeling(
    g: Graph,
    k: int,
    fixed: dict[int, int] | None = None,
    min_free_label: int = 1,
) -> tuple[int, ...] | None:
    """Lexicographically first feasible labeling with labels in {1..k}, or None.

    `fixed` pins chosen vertices to chosen labels; every other vertex ranges
    over {min_free_label..k}. Vertices are assigned in ascending order
    (pinned ones first) and a partial labeling is abandoned exactly when its
    already-labeled vertices contain a violating path: extending the labeling
    only adds vertices to the low-label subgraphs, so such a violation can
    never be repaired.
    """
    n = g.n
    adj = g.adj
    pins = dict(fixed or {})
    for v, lab in pins.items():
        g._check_vertex(v)
        if not 1 <= lab <= k:
            raise ValueError(f"pinned label {lab} of vertex {v} outside 1..{k}")
    order = sorted(pins) + [v for v in range(n) if v not in pins]
    labels = [0] * n
    lab_masks = [0] * (k + 1)

    def violates(i: int, c: int) -> bool:
        # Adding vertex i with label c can only create a violation inside the
        # component of i of some <=L subgraph, L >= c.
        acc = 0
        for lab in range(1, c):
            acc |= lab_masks[lab]
        bit_i = 1 << i
        for lab in range(c, k + 1):
            acc |= lab_masks[lab]
            comp = component_of(adj, acc | bit_i, i)
            same = lab_masks[lab] | (bit_i if lab == c else 0)
            if (comp & same).bit_count() >= 2:
                return True
        return False

    def assign(pos: int) -> tuple[int, ...] | None:
        if pos == n:
            return tuple(labels)
        u = order[pos]
        choices = (pins[u],) if u in pins else range(min_free_label, k + 1)
        for c in choices:
            if violates(u, c):
                continue
            labels[u] = c
            lab_masks[c] |= 1 << u
            found = assign(pos + 1)
            if found is not None:
                return found
            lab_masks[c] &= ~(1 << u)
            labels[u] = 0
        return None

    return assign(0)


def brute_force_td(g: Graph) -> int:
    """Smallest k admitting a feasible k-labeling, by search over labelings.

    Independent of the subset solver; limited to 8 vertices.
    """
    if g.n > BRUTE_FORCE_MAX_VERTICES:
        raise ValueError(
            f"brute_force_td supports at most {BRUTE_FORCE_MAX_VERTICES} vertices"
        )
    for k in range(1, g.n + 1):
        if search_feasible_labeling(g, k) is not None:
            return k
    raise AssertionError("an injective labeling is always feasible")
