"""Criticality certification, 1-uniqueness testing, and the hn family report.

A graph is critical when every proper minor has strictly smaller tree-depth.
Only edge deletions, edge contractions, and deletions of isolated vertices
are enumerated: deleting a non-isolated vertex factors through deleting an
incident edge first, so its tree-depth is dominated by that of the edge
deletion and never needs its own solver call.

A vertex v is 1-unique when some optimal ranking gives v the only label 1.
Two independent tests are provided. The transform method compares td(G)
against the graph obtained by deleting v and completing its neighbourhood
into a clique; v is 1-unique exactly when that transform lowers the
tree-depth. The direct method searches for an optimal ranking with v pinned
to label 1 and everything else above 1. The report runs both whenever the
direct method is in range and insists they agree.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .graphs import (
    Graph,
    MinorStep,
    apply_minor_step,
    hn,
    one_step_minor_steps,
    star_clique,
)
from .ranking import Ranking, hn_minor_witness, verify_ranking, witness_hn
from .solver import (
    BudgetExceededError,
    SolverConfig,
    search_feasible_labeling,
    treedepth,
)

DIRECT_MAX_VERTICES = 8


@dataclass(frozen=True)
class StepResult:
    step: MinorStep
    td: int


@dataclass(frozen=True)
class CriticalityReport:
    """Per-minor tree-depths of all one-step minors.

    is_critical is False as soon as one minor fails to drop, True when all
    enumerated minors drop and none was inconclusive, and None when the only
    obstacle was a solver budget.
    """

    base_td: int
    steps: tuple[StepResult, ...]
    failing_steps: tuple[StepResult, ...]
    inconclusive_steps: tuple[MinorStep, ...]
    is_critical: bool | None


def _run_indexed(tasks, threads: int):
    """Run tasks (no-arg callables) preserving order, optionally on a pool."""
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda t: t(), tasks))
    return [t() for t in tasks]


def is_critical(g: Graph, config: SolverConfig | None = None) -> CriticalityReport:
    """Certify whether every one-step minor has smaller tree-depth."""
    if g.n < 2:
        raise ValueError("criticality needs at least 2 vertices")
    base = treedepth(g, config).value
    steps = one_step_minor_steps(g)

    def solve_step(step: MinorStep):
        minor = apply_minor_step(g, step)
        try:
            return StepResult(step, treedepth(minor, config).value)
        except BudgetExceededError:
            return step

    threads = config.threads if config is not None else 1
    outcomes = _run_indexed([lambda s=s: solve_step(s) for s in steps], threads)
    results = tuple(o for o in outcomes if isinstance(o, StepResult))
    inconclusive = tuple(o for o in outcomes if isinstance(o, MinorStep))
    failing = tuple(r for r in results if r.td >= base)
    if failing:
        verdict: bool | None = False
    elif inconclusive:
        verdict = None
    else:
        verdict = True
    return CriticalityReport(
        base_td=base,
        steps=results,
        failing_steps=failing,
        inconclusive_steps=inconclusive,
        is_critical=verdict,
    )


def one_unique_starclique(
    g: Graph, v: int, config: SolverConfig | None = None
) -> bool:
    """Transform test: delete v, complete its neighbourhood, compare tree-depths."""
    if g.n < 2:
        raise ValueError("1-uniqueness tests need at least 2 vertices")
    g._check_vertex(v)
    return treedepth(star_clique(g, v), config).value < treedepth(g, config).value


def one_unique_direct(
    g: Graph, v: int, config: SolverConfig | None = None
) -> Ranking | None:
    """Exhaustive test: an optimal ranking with v pinned as the only label 1.

    Searches all labelings with td(G) colors where v has label 1 and every
    other vertex a label in {2..td(G)}; returns the first valid one or None.
    """
    if g.n > DIRECT_MAX_VERTICES:
        raise ValueError(
            f"one_unique_direct supports at most {DIRECT_MAX_VERTICES} vertices"
        )
    g._check_vertex(v)
    k = treedepth(g, config).value
    labels = search_feasible_labeling(g, k, fixed={v: 1}, min_free_label=2)
    return None if labels is None else Ranking(labels, k)


@dataclass(frozen=True)
class VertexUniqueness:
    vertex: int
    one_unique: bool | None
    by_starclique: bool | None
    by_direct: bool | None  # None when skipped (n > 8) or inconclusive
    witness: Ranking | None


@dataclass(frozen=True)
class UniquenessReport:
    per_vertex: tuple[VertexUniqueness, ...]
    non_one_unique: tuple[int, ...]
    graph_one_unique: bool | None
    direct_method_ran: bool


def _lift_transform_witness(g: Graph, v: int, h_witness: Ranking) -> Ranking:
    """Turn an optimal ranking of the v-transform into one of g with v at 1.

    Shifting every label of the transform up by one and placing v alone at
    label 1 is feasible: a path of g between equal labels either avoids v and
    is a path of the transform, or passes through v and can be shortcut
    across the clique on v's former neighbourhood; either way the higher
    internal label survives the shift.
    """
    labels = [0] * g.n
    labels[v] = 1
    for i, lab in enumerate(h_witness.labels):
        gv = i if i < v else i + 1
        labels[gv] = lab + 1
    return Ranking(tuple(labels), h_witness.colors + 1)


def uniqueness_report(
    g: Graph, config: SolverConfig | None = None
) -> UniquenessReport:
    """Per-vertex 1-uniqueness verdicts with witnesses.

    The transform method decides every vertex; the direct search also runs
    when the graph has at most 8 vertices, and a disagreement between the two
    is an internal error. The witness of a 1-unique vertex is the lifted
    optimal ranking of its transform.
    """
    if g.n < 2:
        raise ValueError("1-uniqueness tests need at least 2 vertices")
    base = treedepth(g, config).value
    direct_in_range = g.n <= DIRECT_MAX_VERTICES

    def check(v: int) -> VertexUniqueness:
        try:
            cert_h = treedepth(star_clique(g, v), config)
            unique = cert_h.value < base
            by_direct = None
            if direct_in_range:
                found = one_unique_direct(g, v, config)
                by_direct = found is not None
        except BudgetExceededError:
            return VertexUniqueness(v, None, None, None, None)
        if by_direct is not None and by_direct != unique:
            raise RuntimeError(
                f"1-uniqueness methods disagree at vertex {v}: "
                f"transform={unique} direct={by_direct}"
            )
        witness = None
        if unique:
            witness = _lift_transform_witness(g, v, cert_h.witness)
        return VertexUniqueness(v, unique, unique, by_direct, witness)

    threads = config.threads if config is not None else 1
    per_vertex = tuple(
        _run_indexed([lambda v=v: check(v) for v in range(g.n)], threads)
    )
    non_unique = tuple(u.vertex for u in per_vertex if u.one_unique is False)
    if any(u.one_unique is None for u in per_vertex):
        overall: bool | None = None
    else:
        overall = not non_unique
    return UniquenessReport(
        per_vertex=per_vertex,
        non_one_unique=non_unique,
        graph_one_unique=overall,
        direct_method_ran=direct_in_range,
    )


# ---------------------------------------------------------------------------
# hn family reproduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyRow:
    """One fully-checked member of the hn family.

    Expected values: tree-depth n+1; critical; the hub is the only vertex
    that is not 1-unique; the hub transform has tree-depth ceil(3(n-1)/2);
    and every explicit witness coloring verifies without the solver.
    """

    n: int
    td: int | None
    critical: bool | None
    non_1_unique: tuple[int, ...] | None
    starclique_td: int | None
    witnesses_ok: bool
    expected_td: int
    expected_starclique_td: int
    ok: bool
    incomplete: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "td": self.td,
            "critical": self.critical,
            "non_1_unique": list(self.non_1_unique) if self.non_1_unique is not None else None,
            "starclique_td": self.starclique_td,
            "witnesses_ok": self.witnesses_ok,
            "ok": self.ok,
            "incomplete": self.incomplete,
        }


def family_witnesses_ok(n: int) -> bool:
    """Verify every explicit hn coloring with the verifier alone (no solver)."""
    g, layout = hn(n)
    top = witness_hn(n)
    if verify_ranking(g, top) is not None:
        return False
    if top.colors != n + 1 or top.max_label != n + 1:
        return False
    steps = [MinorStep.del_edge(u, v) for u, v in g.edges()]
    steps.extend(MinorStep.contract(u, v) for u, v in g.edges())
    steps.extend(MinorStep.del_vertex(v) for v in range(g.n))
    for step in steps:
        minor, coloring = hn_minor_witness(n, step)
        if verify_ranking(minor, coloring) is not None:
            return False
        if coloring.max_label > n:
            return False
    return True


def _family_row(n: int, config: SolverConfig | None) -> FamilyRow:
    g, layout = hn(n)
    expected_td = n + 1
    expected_sc = -(-3 * (n - 1) // 2)
    td = critical = non_unique = sc_td = None
    incomplete = False
    try:
        td = treedepth(g, config).value
        report = is_critical(g, config)
        critical = report.is_critical
        uniq = uniqueness_report(g, config)
        non_unique = uniq.non_one_unique
        if critical is None or uniq.graph_one_unique is None:
            incomplete = True
        sc_td = treedepth(star_clique(g, layout.hub), config).value
    except BudgetExceededError:
        incomplete = True
    witnesses_ok = family_witnesses_ok(n)
    ok = (
        not incomplete
        and td == expected_td
        and critical is True
        and non_unique == (layout.hub,)
        and sc_td == expected_sc
        and witnesses_ok
    )
    return FamilyRow(
        n=n,
        td=td,
        critical=critical,
        non_1_unique=non_unique,
        starclique_td=sc_td,
        witnesses_ok=witnesses_ok,
        expected_td=expected_td,
        expected_starclique_td=expected_sc,
        ok=ok,
        incomplete=incomplete,
    )


def reproduce(n_max: int, config: SolverConfig | None = None) -> list[FamilyRow]:
    """Check every hn family member for n = 4..n_max, 4 <= n_max <= 8."""
    if not 4 <= n_max <= 8:
        raise ValueError(f"reproduce supports n_max in 4..8, got {n_max}")
    return [_family_row(n, config) for n in range(4, n_max + 1)]
