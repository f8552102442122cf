"""Command-line surface: td, verify, gen, critical, unique1, reproduce, selftest.

Exit codes are a stable contract: 0 success, 1 property-check failure,
2 parse error, 3 budget exhaustion, 4 usage error. Flags mirror environment
variables with the TDLAB_ prefix (TDLAB_THREADS, TDLAB_NODE_BUDGET,
TDLAB_TIME_BUDGET, TDLAB_MEMO_CAPACITY, TDLAB_FORMAT, TDLAB_SEED); an
explicit flag wins over its environment variable.

Stdout is deterministic for identical inputs and flags; wall-clock timings
go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .critical import (
    CriticalityReport,
    FamilyRow,
    UniquenessReport,
    is_critical,
    reproduce,
    uniqueness_report,
)
from .formats import (
    FormatError,
    format_graph_text,
    format_ranking,
    parse_graph_text,
    parse_ranking,
)
from .graphs import Graph, cartesian_k2, complete, cycle, hn, k_net, path
from .ranking import verify_ranking
from .selftest import run_selftest
from .solver import BudgetExceededError, SolverConfig, treedepth

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_USAGE = 4

ENV_PREFIX = "TDLAB_"

FAMILIES = {
    "hn": lambda n: hn(n)[0],
    "knet": k_net,
    "kak2": cartesian_k2,
    "complete": complete,
    "cycle": cycle,
    "path": path,
}


def _env(name: str) -> str | None:
    return os.environ.get(ENV_PREFIX + name)


def _env_int(name: str, fallback: int | None) -> int | None:
    raw = _env(name)
    return fallback if raw is None else int(raw)


def _env_float(name: str, fallback: float | None) -> float | None:
    raw = _env(name)
    return fallback if raw is None else float(raw)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse with the usage-error exit code of this tool."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _solver_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument(
        "--threads", type=int, default=_env_int("THREADS", 1),
        help="worker threads for independent sub-solves (default 1)",
    )
    p.add_argument(
        "--node-budget", type=int, default=_env_int("NODE_BUDGET", None),
        help="abort with bounds after this many expanded nodes",
    )
    p.add_argument(
        "--time-budget", type=float, default=_env_float("TIME_BUDGET", None),
        metavar="SECONDS", help="abort with bounds after this much wall time",
    )
    p.add_argument(
        "--memo-capacity", type=int, default=_env_int("MEMO_CAPACITY", None),
        help="abort with bounds beyond this many memo entries",
    )
    return p


def _io_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument(
        "--format", choices=("edgelist", "graph6"), default=_env("FORMAT"),
        help="force the graph input format (default: auto-detect)",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return p


def _config_from(args: argparse.Namespace) -> SolverConfig | None:
    threads = getattr(args, "threads", 1)
    node_budget = getattr(args, "node_budget", None)
    time_budget = getattr(args, "time_budget", None)
    memo_capacity = getattr(args, "memo_capacity", None)
    if threads == 1 and node_budget is None and time_budget is None and memo_capacity is None:
        return None
    return SolverConfig(
        node_budget=node_budget,
        time_budget=time_budget,
        threads=threads,
        memo_capacity=memo_capacity,
    )


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, "r", encoding="ascii") as fh:
            return fh.read()
    except UnicodeDecodeError as exc:
        raise FormatError(f"input is not ASCII text: {exc}") from None


def _load_graph(args: argparse.Namespace) -> Graph:
    return parse_graph_text(_read_text(args.graph), getattr(args, "format", None))


def _emit_json(doc) -> None:
    print(json.dumps(doc, sort_keys=True))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_td(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    try:
        cert = treedepth(g, _config_from(args))
    except BudgetExceededError as exc:
        if args.json:
            _emit_json(
                {"bounds": {"lower": exc.bounds.lower, "upper": exc.bounds.upper}}
            )
        else:
            print(f"budget exhausted: td in [{exc.bounds.lower}, {exc.bounds.upper}]")
        print(f"# {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.json:
        _emit_json(
            {
                "td": cert.value,
                "witness": {
                    "colors": cert.witness.colors,
                    "labels": list(cert.witness.labels),
                },
                "stats": {
                    "nodes": cert.stats.nodes,
                    "memo_entries": cert.stats.memo_entries,
                },
            }
        )
    else:
        print(f"td: {cert.value}")
        print(f"witness: {format_ranking(cert.witness)}", end="")
        print(f"nodes: {cert.stats.nodes}  memo: {cert.stats.memo_entries}")
    print(f"# elapsed: {cert.stats.elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    g = FAMILIES[args.family](args.size)
    sys.stdout.write(format_graph_text(g, args.format or "edgelist"))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.graph == "-" and args.ranking == "-":
        raise ValueError("only one of GRAPH and RANKING can read from stdin")
    g = parse_graph_text(_read_text(args.graph), args.format)
    r = parse_ranking(_read_text(args.ranking))
    violation = verify_ranking(g, r)
    if violation is None:
        if args.json:
            _emit_json({"valid": True})
        else:
            print("valid")
        return EXIT_OK
    if args.json:
        _emit_json(
            {
                "valid": False,
                "label": violation.label,
                "pair": list(violation.pair),
                "path": list(violation.path),
            }
        )
    else:
        x, y = violation.pair
        route = "-".join(str(v) for v in violation.path)
        print(
            f"invalid: vertices {x} and {y} share label {violation.label} "
            f"joined by path {route} with no higher label inside"
        )
    return EXIT_PROPERTY


def _criticality_doc(report: CriticalityReport) -> dict:
    return {
        "base_td": report.base_td,
        "is_critical": report.is_critical,
        "steps": [
            {"step": str(r.step), "kind": r.step.kind, "u": r.step.u, "v": r.step.v, "td": r.td}
            for r in report.steps
        ],
        "failing": [str(r.step) for r in report.failing_steps],
        "inconclusive": [str(s) for s in report.inconclusive_steps],
    }


def cmd_critical(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    report = is_critical(g, _config_from(args))
    if args.json:
        _emit_json(_criticality_doc(report))
    else:
        print(f"td: {report.base_td}")
        print(f"{'step':<12} {'td':>4} {'drops':>6}")
        for r in report.steps:
            print(f"{str(r.step):<12} {r.td:>4} {'yes' if r.td < report.base_td else 'NO':>6}")
        for s in report.inconclusive_steps:
            print(f"{str(s):<12} {'?':>4} {'?':>6}")
        verdict = {True: "critical", False: "not critical", None: "inconclusive"}
        print(f"verdict: {verdict[report.is_critical]}")
    return EXIT_BUDGET if report.is_critical is None else EXIT_OK


def _uniqueness_doc(report: UniquenessReport) -> dict:
    return {
        "one_unique": report.graph_one_unique,
        "non_1_unique": list(report.non_one_unique),
        "direct_method_ran": report.direct_method_ran,
        "vertices": [
            {
                "vertex": u.vertex,
                "one_unique": u.one_unique,
                "by_starclique": u.by_starclique,
                "by_direct": u.by_direct,
                "witness": None if u.witness is None else list(u.witness.labels),
            }
            for u in report.per_vertex
        ],
    }


def cmd_unique1(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    report = uniqueness_report(g, _config_from(args))
    selected = report.per_vertex
    if args.vertex is not None:
        if not 0 <= args.vertex < g.n:
            raise ValueError(f"vertex {args.vertex} does not exist (n={g.n})")
        selected = tuple(u for u in report.per_vertex if u.vertex == args.vertex)
    if args.json:
        doc = _uniqueness_doc(report)
        if args.vertex is not None:
            doc["vertices"] = [d for d in doc["vertices"] if d["vertex"] == args.vertex]
        _emit_json(doc)
    else:
        print(f"{'vertex':>6} {'1-unique':>9} {'transform':>10} {'direct':>7}")
        fmt = {True: "yes", False: "no", None: "-"}
        for u in selected:
            print(
                f"{u.vertex:>6} {fmt[u.one_unique]:>9} "
                f"{fmt[u.by_starclique]:>10} {fmt[u.by_direct]:>7}"
            )
        if args.vertex is None:
            if report.graph_one_unique is None:
                print("verdict: inconclusive")
            elif report.non_one_unique:
                members = ", ".join(str(v) for v in report.non_one_unique)
                print(f"non-1-unique: {{{members}}}")
            else:
                print("all vertices 1-unique")
    if report.graph_one_unique is None:
        return EXIT_BUDGET
    return EXIT_OK


def _row_line(row: FamilyRow) -> str:
    def show(x):
        return "?" if x is None else x

    non1 = "?" if row.non_1_unique is None else "{" + ",".join(map(str, row.non_1_unique)) + "}"
    return (
        f"{row.n:>3} {show(row.td):>4} {row.expected_td:>8} "
        f"{show(row.critical)!s:>9} {non1:>13} "
        f"{show(row.starclique_td):>7} {row.expected_starclique_td:>8} "
        f"{row.witnesses_ok!s:>10} {'OK' if row.ok else 'FAIL':>5}"
    )


def cmd_reproduce(args: argparse.Namespace) -> int:
    rows = reproduce(args.n_max, _config_from(args))
    if args.json:
        _emit_json([row.to_json_dict() for row in rows])
    else:
        print(
            f"{'n':>3} {'td':>4} {'expected':>8} {'critical':>9} "
            f"{'non-1-unique':>13} {'sc(td)':>7} {'expected':>8} {'witnesses':>10} {'ok':>5}"
        )
        for row in rows:
            print(_row_line(row))
    if any(row.incomplete for row in rows):
        return EXIT_BUDGET
    if not all(row.ok for row in rows):
        return EXIT_PROPERTY
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    ok = run_selftest(seed=args.seed)
    print("selftest: " + ("all suites passed" if ok else "FAILURES above"))
    return EXIT_OK if ok else EXIT_PROPERTY


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    solver_opts = _solver_options()
    io_opts = _io_options()
    parser = _ArgumentParser(
        prog="tdlab",
        description="Exact tree-depth laboratory for small graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("td", parents=[io_opts, solver_opts],
                       help="exact tree-depth with witness and stats")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.set_defaults(func=cmd_td)

    p = sub.add_parser("gen", help="emit a generator family member")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("size", type=int)
    p.add_argument(
        "--format", choices=("edgelist", "graph6"), default=_env("FORMAT"),
        help="output format (default edgelist)",
    )
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[io_opts],
                       help="check a ranking against a graph")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("ranking", help="ranking file ('k: l_0 l_1 ...'), or - for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("critical", parents=[io_opts, solver_opts],
                       help="tree-depth of every one-step minor")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("unique1", parents=[io_opts, solver_opts],
                       help="per-vertex 1-uniqueness report")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--vertex", type=int, default=None, help="restrict to one vertex")
    p.set_defaults(func=cmd_unique1)

    p = sub.add_parser("reproduce", parents=[io_opts, solver_opts],
                       help="certify the hn family up to n_max")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("selftest", help="reduced-scale cross-validation suites")
    p.add_argument("--seed", type=int, default=_env_int("SEED", 0),
                   help="seed for the randomized spot checks")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(
            f"budget exhausted: td in [{exc.bounds.lower}, {exc.bounds.upper}]",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
