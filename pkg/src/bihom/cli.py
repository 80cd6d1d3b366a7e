"""Command-line entry point.

Subcommands:

* ``count``      hom(F, G) for arbitrary source and target
* ``kpq``        hom(K_{p,q}, G) by the best available exact route
* ``census``     the biclique census table N[k][l] of a bipartite graph
* ``eta``        the edge-removal correction term eta_{p,q}(G)
* ``bound``      the full lower/upper bound report for one instance
* ``gen``        a seeded random bipartite instance in the text format
* ``stirling``   Stirling numbers of the second kind
* ``experiment`` the shipped CSV experiment protocols (fig1..fig4)

Graphs are given either as a file path or as an inline spec: ``cycle:N``,
``path:N`` (N vertices), or ``complete:N1,N2``.

Exit codes: 2 for usage errors (unknown flags, malformed specs or graph
files), 3 for a missing input file, 4 for a computation that exceeds its
step budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import bound_report
from .census import (
    DEFAULT_CENSUS_BUDGET,
    CensusBudgetError,
    biclique_census,
    eta,
)
from .combin import stirling2
from .counting import DEFAULT_COUNT_BUDGET, CountBudgetError, hom_count
from .experiments import (
    FIGURES,
    ExperimentError,
    default_config,
    run_experiment,
)
from .graphs import (
    BipartiteGraph,
    GraphFormatError,
    SimpleGraph,
    complete_bipartite,
    cycle_graph,
    format_graph,
    path_graph,
    random_bipartite,
    read_graph,
    to_bipartite,
)


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _parse_graph_spec(spec: str) -> SimpleGraph | BipartiteGraph:
    kind, sep, rest = spec.partition(":")
    try:
        if sep and kind == "cycle":
            return cycle_graph(int(rest))
        if sep and kind == "path":
            return path_graph(int(rest))
        if sep and kind == "complete":
            a, b = rest.split(",")
            return complete_bipartite(int(a), int(b))
    except ValueError as exc:
        raise _CliError(2, f"bad graph spec {spec!r}: {exc}") from None
    path = Path(spec)
    if not path.exists():
        raise _CliError(3, f"no such file: {spec}")
    try:
        return read_graph(path)
    except GraphFormatError as exc:
        raise _CliError(2, f"{spec}: {exc}") from None


def _as_bipartite(g: SimpleGraph | BipartiteGraph, what: str) -> BipartiteGraph:
    if isinstance(g, BipartiteGraph):
        return g
    b = to_bipartite(g)
    if b is None:
        raise _CliError(2, f"{what} must be bipartite")
    return b


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _CliError(2, f"bad {what}: {text!r}") from None


def _parse_deltas(text: str) -> tuple[Fraction, ...]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise _CliError(2, f"bad grid {text!r}: expected start:stop:step")
        start, stop, step = (_parse_fraction(p, "grid value") for p in parts)
        if step <= 0:
            raise _CliError(2, "grid step must be positive")
        vals = []
        cur = start
        while cur <= stop:
            vals.append(cur)
            cur += step
        return tuple(vals)
    return tuple(_parse_fraction(p, "density") for p in text.split(","))


# ------------------------------------------------------------ subcommands


def _cmd_count(args) -> int:
    f = _parse_graph_spec(args.source)
    g = _parse_graph_spec(args.target)
    res = hom_count(f, g, args.budget)
    if args.json:
        print(json.dumps(
            {"value": res.value, "method": res.method, "cost_estimate": res.cost_estimate}
        ))
    else:
        print(res.value)
    return 0


def _cmd_kpq(args) -> int:
    if args.p < 1 or args.q < 1:
        raise _CliError(2, "part sizes must be at least 1")
    f = complete_bipartite(args.p, args.q)
    g = _parse_graph_spec(args.target)
    res = hom_count(f, g, args.budget)
    if args.json:
        print(json.dumps(
            {"p": args.p, "q": args.q, "value": res.value, "method": res.method}
        ))
    else:
        print(res.value)
    return 0


def _cmd_census(args) -> int:
    g = _as_bipartite(_parse_graph_spec(args.target), "census target")
    c = biclique_census(g, args.k, args.l, args.budget)
    if args.json:
        table = [
            [c.value(k, l) for l in range(1, c.l_max + 1)]
            for k in range(1, c.k_max + 1)
        ]
        print(json.dumps(
            {"n1": c.n1, "n2": c.n2, "k_max": c.k_max, "l_max": c.l_max, "table": table}
        ))
        return 0
    lines = []
    for k in range(1, c.k_max + 1):
        for l in range(1, c.l_max + 1):
            lines.append(f"{k},{l},{c.value(k, l)}" if args.csv else f"{k} {l} {c.value(k, l)}")
    if args.csv:
        lines.insert(0, "k,l,count")
    print("\n".join(lines))
    return 0


def _cmd_eta(args) -> int:
    g = _as_bipartite(_parse_graph_spec(args.target), "eta target")
    if args.p < 2 or args.q < 2:
        raise _CliError(2, "eta requires part sizes at least 2")
    e = eta(g, args.p, args.q)
    if args.json:
        print(json.dumps({"p": e.p, "q": e.q, "value": e.value}))
    else:
        print(e.value)
    return 0


def _cmd_bound(args) -> int:
    g = _as_bipartite(_parse_graph_spec(args.target), "bound target")
    have_f = args.source is not None
    have_pq = args.p is not None or args.q is not None
    if have_f == have_pq or (have_pq and (args.p is None or args.q is None)):
        raise _CliError(2, "give either --source or both -p and -q")
    f = _parse_graph_spec(args.source) if have_f else None
    report = bound_report(
        g, f=f, p=args.p, q=args.q, seed=args.seed, budget=args.budget
    )
    payload = report.to_json_dict()
    if args.json:
        print(json.dumps(payload))
    else:
        for key, val in payload.items():
            print(f"{key}: {json.dumps(val) if isinstance(val, (dict, list)) else val}")
    return 0


def _cmd_gen(args) -> int:
    if args.n1 < 0 or args.n2 < 0:
        raise _CliError(2, "part sizes must be nonnegative")
    delta = _parse_fraction(args.delta, "density")
    if not 0 <= delta <= 1:
        raise _CliError(2, f"density must lie in [0, 1], got {delta}")
    inst = random_bipartite(args.n1, args.n2, delta, args.seed)
    text = (
        f"# seeded random bipartite instance: delta={delta} seed={args.seed} "
        f"realized={inst.realized_density}\n" + format_graph(inst.graph)
    )
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_stirling(args) -> int:
    if args.n < 0 or args.k < 0:
        raise _CliError(2, "stirling arguments must be nonnegative")
    v = stirling2(args.n, args.k)
    if args.json:
        print(json.dumps({"n": args.n, "k": args.k, "value": v}))
    else:
        print(v)
    return 0


def _cmd_experiment(args) -> int:
    overrides = {"master_seed": args.seed}
    if args.grid is not None and args.delta is not None:
        raise _CliError(2, "give at most one of --grid and --delta")
    if args.grid is not None:
        overrides["deltas"] = _parse_deltas(args.grid)
    if args.delta is not None:
        overrides["deltas"] = _parse_deltas(args.delta)
    if args.n is not None:
        try:
            overrides["n_values"] = tuple(int(v) for v in args.n.split(","))
        except ValueError:
            raise _CliError(2, f"bad size list {args.n!r}") from None
    if args.instances is not None:
        if args.instances < 1:
            raise _CliError(2, "--instances must be positive")
        overrides["instances"] = args.instances
    if args.budget is not None:
        overrides["budget"] = args.budget
    cfg = default_config(args.figure, **overrides)
    csv_text = run_experiment(args.figure, cfg)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    return 0


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bihom",
        description="Exact homomorphism counts and bounds for bipartite graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("count", _cmd_count, "hom(F, G) for arbitrary graphs")
    p.add_argument("-f", "--source", required=True, help="source graph (file or spec)")
    p.add_argument("-g", "--target", required=True, help="target graph (file or spec)")
    p.add_argument("--budget", type=int, default=DEFAULT_COUNT_BUDGET)
    p.add_argument("--json", action="store_true")

    p = add("kpq", _cmd_kpq, "hom(K_{p,q}, G)")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_COUNT_BUDGET)
    p.add_argument("--json", action="store_true")

    p = add("census", _cmd_census, "biclique census table")
    p.add_argument("--target", required=True)
    p.add_argument("-k", type=int, required=True, help="max left subset size")
    p.add_argument("-l", type=int, required=True, help="max right subset size")
    p.add_argument("--budget", type=int, default=DEFAULT_CENSUS_BUDGET)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")

    p = add("eta", _cmd_eta, "edge-removal correction term")
    p.add_argument("--target", required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = add("bound", _cmd_bound, "lower/upper bound report for one instance")
    p.add_argument("--target", required=True)
    p.add_argument("-f", "--source", help="source graph (file or spec)")
    p.add_argument("-p", type=int, help="left size of a complete bipartite source")
    p.add_argument("-q", type=int, help="right size of a complete bipartite source")
    p.add_argument("--seed", type=int, help="recorded in the report metadata")
    p.add_argument("--budget", type=int, default=DEFAULT_COUNT_BUDGET)
    p.add_argument("--json", action="store_true")

    p = add("gen", _cmd_gen, "seeded random bipartite instance")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--delta", required=True, help="edge density in [0,1]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")

    p = add("stirling", _cmd_stirling, "Stirling number of the second kind")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = add("experiment", _cmd_experiment, "run a shipped experiment protocol")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", help="output CSV file (default: stdout)")
    p.add_argument("--grid", help="density grid, start:stop:step or comma list")
    p.add_argument("--delta", help="density list, comma separated")
    p.add_argument("--n", help="size list, comma separated")
    p.add_argument("--instances", type=int)
    p.add_argument("--budget", type=int)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (CensusBudgetError, CountBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ExperimentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
