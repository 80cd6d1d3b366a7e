"""Reproducible numerical experiment drivers.

Four protocols, each sweeping random bipartite instances and emitting CSV
text with a fixed header:

* fig1 — exact hom(K_{3,3}, G) against the four lower bounds on a density
  grid (one instance per density, equal sides).
* fig2 — the lower bounds alone for K_{10,10} (exact counting is out of
  reach at that size; the exact column is left empty).
* fig3 — mean exact count and mean general lower/upper bounds for a fixed
  8-edge source against targets of growing size.
* fig4 — mean general lower/upper bounds for random sources against a
  fixed 100-vertex tree target.

Instance seeds derive from (master seed, figure id, cell indices) through
SHA-256, so a given configuration reproduces byte-identical CSV no matter
how the sweep is scheduled.  All magnitude columns carry log10 values; a
zero or unavailable quantity is an empty cell.  Aggregated drivers report
arithmetic means of per-instance log10 values, and every row is
re-validated at emission time (bound ordering, and lower <= exact <= upper
whenever the exact value is on hand).  Rows are sorted by the primary
sweep variable, then by the remaining cell coordinates.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources

from .bounds import (
    combinatorial_lb,
    degree_entropies,
    entropy_lb_basic,
    entropy_lb_refined,
    general_lower_bound,
    sidorenko_lb,
    upper_bound_general,
)
from .census import biclique_census, exact_kpq_count
from .combin import LogValue, log10_of_int
from .counting import DEFAULT_COUNT_BUDGET, CountBudgetError, one_sided_exact_hom
from .graphs import BipartiteGraph, degree_profile, random_bipartite, read_graph

_LOG_TOL = 1e-9

FIG1_HEADER = (
    "delta_nominal,delta_realized,seed,exact_log10,comb_lb_log10,"
    "basic_lb_log10,refined_lb_log10,sidorenko_lb_log10"
)
FIG2_HEADER = "n," + FIG1_HEADER
FIG3_HEADER = "n,delta,mean_exact_log10,mean_general_lb_log10,mean_ub_log10,instances"
FIG4_HEADER = "n,delta,mean_general_lb_log10,mean_ub_log10,instances"

#: Side size needed for the biclique census backing the fig3 bounds (the
#: shipped source fits inside K_{4,4}).
_FIG3_CENSUS_SIZE = 4


class ExperimentError(RuntimeError):
    """A row failed its emission-time consistency check."""


@dataclass(frozen=True)
class ExperimentConfig:
    figure: str
    n_values: tuple[int, ...]
    deltas: tuple[Fraction, ...]
    instances: int
    master_seed: int = 0
    budget: int = DEFAULT_COUNT_BUDGET


_DENSITY_GRID = tuple(Fraction(k, 100) for k in range(1, 101))
_SIZE_SWEEP = tuple(range(10, 101, 10))

_DEFAULTS = {
    "fig1": ExperimentConfig("fig1", (100,), _DENSITY_GRID, 1),
    "fig2": ExperimentConfig("fig2", (100, 1000), _DENSITY_GRID, 1),
    "fig3": ExperimentConfig("fig3", _SIZE_SWEEP, (Fraction(1, 4), Fraction(3, 4)), 100),
    "fig4": ExperimentConfig("fig4", _SIZE_SWEEP, (Fraction(1, 4), Fraction(3, 4)), 50),
}

FIGURES = tuple(sorted(_DEFAULTS))


def default_config(figure: str, **overrides) -> ExperimentConfig:
    """The shipped protocol for ``figure``, with optional field overrides."""
    try:
        cfg = _DEFAULTS[figure]
    except KeyError:
        raise ValueError(f"unknown figure id {figure!r}") from None
    return replace(cfg, **overrides) if overrides else cfg


def cell_seed(master_seed: int, figure: str, *indices: int) -> int:
    """Deterministic 63-bit seed for one grid cell.

    SHA-256 of a canonical string rather than ``hash()``, so the value is
    stable across platforms, processes and Python releases.
    """
    text = "|".join([str(master_seed), figure, *map(str, indices)])
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


# ----------------------------------------------------------- CSV plumbing


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _log_cell(v) -> str:
    # Magnitude cell: integers get logged, zero / unavailable is empty.
    if v is None:
        return ""
    if isinstance(v, LogValue):
        return "" if v.is_zero else _fmt(v.log10)
    if isinstance(v, int):
        return "" if v == 0 else _fmt(log10_of_int(v))
    return _fmt(v)


def _csv(header: str, rows: list[list[str]]) -> str:
    return "\n".join([header, *(",".join(r) for r in rows)]) + "\n"


def _mean(xs: list[float]) -> float:
    return sum(xs) / len(xs)


def _entropies(g: BipartiteGraph) -> tuple[float, float]:
    if g.edge_count == 0:
        return 0.0, 0.0
    return degree_entropies(degree_profile(g))


def _check_chain(tag: str, sid: LogValue, basic: LogValue, refined: LogValue) -> None:
    if sid.log10 > basic.log10 + _LOG_TOL or basic.log10 > refined.log10 + _LOG_TOL:
        raise ExperimentError(
            f"{tag}: entropy bound ordering violated (sidorenko={sid.log10}, "
            f"basic={basic.log10}, refined={refined.log10})"
        )


# ------------------------------------------------------------ data files


def _load_data(name: str) -> BipartiteGraph:
    ref = resources.files("bihom").joinpath("data", name)
    with resources.as_file(ref) as path:
        g = read_graph(path)
    if not isinstance(g, BipartiteGraph):  # pragma: no cover - shipped files
        raise TypeError(f"{name} is not a bipartite graph file")
    return g


def load_fig3_source() -> BipartiteGraph:
    """The fixed 8-edge connected spanning subgraph of K_{4,4} used by fig3."""
    return _load_data("fig3_source.graph")


def load_fig4_tree() -> BipartiteGraph:
    """The fixed 100-vertex tree (max degree 5, not a path) used by fig4."""
    return _load_data("fig4_tree.graph")


# ------------------------------------------------------------------ fig1


def run_fig1(config: ExperimentConfig | None = None) -> str:
    """Exact hom(K_{3,3}, G) and all four lower bounds over a density grid."""
    cfg = config or default_config("fig1")
    n = cfg.n_values[0]
    p = q = 3
    rows: list[list[str]] = []
    for i, d in enumerate(sorted(cfg.deltas)):
        seed = cell_seed(cfg.master_seed, "fig1", i)
        inst = random_bipartite(n, n, d, seed)
        g = inst.graph
        exact = exact_kpq_count(p, q, biclique_census(g, p, q, cfg.budget))
        comb = combinatorial_lb(p, q, g)
        dr = inst.realized_density
        basic = entropy_lb_basic(p, q, n, n, dr)
        x_nats, y_nats = _entropies(g)
        refined = entropy_lb_refined(p, q, n, n, dr, x_nats, y_nats)
        sid = sidorenko_lb(p, q, n, n, dr)

        tag = f"fig1 delta={float(d):g} seed={seed}"
        _check_chain(tag, sid, basic, refined)
        for name, lb in (
            ("combinatorial", comb),
            ("basic", basic.ceil_int()),
            ("refined", refined.ceil_int()),
            ("sidorenko", sid.ceil_int()),
        ):
            if lb > exact:
                raise ExperimentError(f"{tag}: {name} bound {lb} exceeds exact {exact}")

        rows.append(
            [
                _fmt(float(d)),
                _fmt(float(dr)),
                str(seed),
                _log_cell(exact),
                _log_cell(comb),
                _log_cell(basic),
                _log_cell(refined),
                _log_cell(sid),
            ]
        )
    return _csv(FIG1_HEADER, rows)


# ------------------------------------------------------------------ fig2


def run_fig2(config: ExperimentConfig | None = None) -> str:
    """Lower bounds for hom(K_{10,10}, G) at sizes where exact counting is
    out of reach; the exact column is present but empty."""
    cfg = config or default_config("fig2")
    p = q = 10
    rows: list[list[str]] = []
    for ni, n in enumerate(sorted(cfg.n_values)):
        for di, d in enumerate(sorted(cfg.deltas)):
            seed = cell_seed(cfg.master_seed, "fig2", ni, di)
            inst = random_bipartite(n, n, d, seed)
            g = inst.graph
            comb = combinatorial_lb(p, q, g)
            dr = inst.realized_density
            basic = entropy_lb_basic(p, q, n, n, dr)
            x_nats, y_nats = _entropies(g)
            refined = entropy_lb_refined(p, q, n, n, dr, x_nats, y_nats)
            sid = sidorenko_lb(p, q, n, n, dr)
            _check_chain(f"fig2 n={n} delta={float(d):g}", sid, basic, refined)
            rows.append(
                [
                    str(n),
                    _fmt(float(d)),
                    _fmt(float(dr)),
                    str(seed),
                    "",
                    _log_cell(comb),
                    _log_cell(basic),
                    _log_cell(refined),
                    _log_cell(sid),
                ]
            )
    return _csv(FIG2_HEADER, rows)


# ------------------------------------------------------------------ fig3


def run_fig3(config: ExperimentConfig | None = None) -> str:
    """Fixed 8-edge source against targets with total size swept.

    Every instance gets one biclique census, reused by the upper bound and
    the general lower bound.  The exact count runs under ``cfg.budget``; a
    breach empties the cell's mean_exact_log10 (the enumeration estimate
    depends only on the dimensions, so the whole cell goes absent at once —
    the value is never approximated).
    """
    cfg = config or default_config("fig3")
    src = load_fig3_source()
    rows: list[list[str]] = []
    for ni, n in enumerate(sorted(cfg.n_values)):
        n1, n2 = n // 2, n - n // 2
        for di, d in enumerate(sorted(cfg.deltas)):
            exact_logs: list[float] | None = []
            lb_logs: list[float] = []
            ub_logs: list[float] = []
            for t in range(cfg.instances):
                seed = cell_seed(cfg.master_seed, "fig3", ni, di, t)
                g = random_bipartite(n1, n2, d, seed).graph
                tag = f"fig3 n={n} delta={float(d):g} seed={seed}"
                if g.edge_count == 0:
                    raise ExperimentError(f"{tag}: target has no edges (grid too sparse)")
                census = biclique_census(
                    g, _FIG3_CENSUS_SIZE, _FIG3_CENSUS_SIZE, cfg.budget
                )
                ub = upper_bound_general(src, g, cfg.budget, census=census)
                lb = general_lower_bound(src, g, cfg.budget, census=census)
                if lb <= 0:
                    raise ExperimentError(f"{tag}: nonpositive lower bound {lb}")
                lb_log = log10_of_int(lb)
                if lb_log > ub.value.log10 + _LOG_TOL:
                    raise ExperimentError(
                        f"{tag}: lower bound exceeds upper bound "
                        f"({lb_log} > {ub.value.log10})"
                    )
                if exact_logs is not None:
                    try:
                        exact = one_sided_exact_hom(src, g, cfg.budget)
                    except CountBudgetError:
                        exact_logs = None
                    else:
                        if lb > exact:
                            raise ExperimentError(
                                f"{tag}: lower bound {lb} exceeds exact {exact}"
                            )
                        ex_log = log10_of_int(exact)
                        if ex_log > ub.value.log10 + _LOG_TOL:
                            raise ExperimentError(
                                f"{tag}: exact exceeds upper bound "
                                f"({ex_log} > {ub.value.log10})"
                            )
                        exact_logs.append(ex_log)
                lb_logs.append(lb_log)
                ub_logs.append(ub.value.log10)
            rows.append(
                [
                    str(n),
                    _fmt(float(d)),
                    _fmt(_mean(exact_logs)) if exact_logs is not None else "",
                    _fmt(_mean(lb_logs)),
                    _fmt(_mean(ub_logs)),
                    str(cfg.instances),
                ]
            )
    return _csv(FIG3_HEADER, rows)


# ------------------------------------------------------------------ fig4


def run_fig4(config: ExperimentConfig | None = None) -> str:
    """Random sources with equal sides against the fixed tree target.

    One source sample per instance feeds both bounds.  The tree census and
    the eta / T(a,b) memos are shared across instances, which is sound only
    because the target never changes.  After the sweep, every eta value the
    lower bound evaluated is checked against the 2 n (n-1) cap that holds
    on a tree with n vertices.
    """
    cfg = config or default_config("fig4")
    tree = load_fig4_tree()
    n_tree = tree.n1 + tree.n2
    k_cap = max(1, max(nn - nn // 2 for nn in cfg.n_values))
    tree_census = biclique_census(tree, k_cap, k_cap, cfg.budget)
    t_cache: dict = {}
    eta_cache: dict[tuple[int, int], int] = {}
    rows: list[list[str]] = []
    for ni, n in enumerate(sorted(cfg.n_values)):
        n1, n2 = n // 2, n - n // 2
        for di, d in enumerate(sorted(cfg.deltas)):
            lb_logs: list[float] = []
            ub_logs: list[float] = []
            for t in range(cfg.instances):
                seed = cell_seed(cfg.master_seed, "fig4", ni, di, t)
                src = random_bipartite(n1, n2, d, seed).graph
                ub = upper_bound_general(
                    src, tree, cfg.budget, census=tree_census, t_cache=t_cache
                )
                lb = general_lower_bound(
                    src, tree, cfg.budget, census=tree_census, eta_cache=eta_cache
                )
                tag = f"fig4 n={n} delta={float(d):g} seed={seed}"
                if lb <= 0:
                    raise ExperimentError(f"{tag}: nonpositive lower bound {lb}")
                lb_log = log10_of_int(lb)
                if lb_log > ub.value.log10 + _LOG_TOL:
                    raise ExperimentError(
                        f"{tag}: lower bound exceeds upper bound "
                        f"({lb_log} > {ub.value.log10})"
                    )
                lb_logs.append(lb_log)
                ub_logs.append(ub.value.log10)
            rows.append(
                [
                    str(n),
                    _fmt(float(d)),
                    _fmt(_mean(lb_logs)),
                    _fmt(_mean(ub_logs)),
                    str(cfg.instances),
                ]
            )
    eta_cap = 2 * n_tree * (n_tree - 1)
    for (pp, qq), val in sorted(eta_cache.items()):
        if val > eta_cap:
            raise ExperimentError(
                f"fig4: eta_({pp},{qq}) = {val} exceeds the tree cap {eta_cap}"
            )
    return _csv(FIG4_HEADER, rows)


RUNNERS = {"fig1": run_fig1, "fig2": run_fig2, "fig3": run_fig3, "fig4": run_fig4}


def run_experiment(figure: str, config: ExperimentConfig | None = None) -> str:
    """Dispatch to the driver for ``figure`` and return its CSV text."""
    try:
        runner = RUNNERS[figure]
    except KeyError:
        raise ValueError(f"unknown figure id {figure!r}") from None
    return runner(config)
