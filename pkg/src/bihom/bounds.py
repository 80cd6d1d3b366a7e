"""Lower and upper bounds on homomorphism counts, and per-instance reports.

Lower bounds for complete bipartite sources:

* combinatorial: sum_w (d^p + d^q) - 2|E|, exact iff the target is C4-free;
* its Jensen relaxation for regular targets;
* entropy form delta^pq (n1^p n2^q + n1^q n2^p);
* a refinement of it driven by the degree-profile entropies of the target;
* the Sidorenko form (2 delta)^pq (n1+n2)^(p+q-2pq) (n1 n2)^pq.

For arbitrary bipartite sources, a degree-degree upper bound (product over
source edges of per-edge complete-bipartite counts, raised to 1/(d_u d_v))
and a component-decomposition lower bound (stars exactly, other components
via the best complete-bipartite lower bound plus an edge-removal gain term).

``bound_report`` assembles everything for one (source, target) instance and
re-validates the sandwich before returning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .census import (
    BicliqueCensus,
    CensusBudgetError,
    biclique_census,
    eta,
    exact_kpq_count,
    is_c4_free,
)
from .combin import LN10, LogValue, log10_of_int
from .counting import (
    DEFAULT_COUNT_BUDGET,
    CountBudgetError,
    hom_count,
    hom_kpq_complete_target,
    star_count,
)
from .graphs import (
    BipartiteGraph,
    DegreeProfile,
    SimpleGraph,
    bipartition_of,
    complete_bipartite,
    degree_profile,
    edge_density,
)

_LOG_TOL = 1e-9


def combinatorial_lb(p: int, q: int, g: BipartiteGraph) -> int:
    """sum_w (d(w)^p + d(w)^q) - 2|E|, a lower bound that is exact
    precisely when g has no 4-cycle."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be at least 1")
    degs = [a.bit_count() for a in g.left_adj]
    degs += [a.bit_count() for a in g.right_adj]
    return sum(d**p + d**q for d in degs) - 2 * g.edge_count


def jensen_regular_lb(p: int, q: int, n: int, m: int) -> LogValue:
    """2^p n^(1-p) m^p + 2^q n^(1-q) m^q - 2m; the Jensen relaxation of the
    combinatorial bound, exact for regular C4-free targets.  Nonpositive
    values (possible for sparse inputs, and always at m = 0) clamp to ZERO.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    value = (
        2**p * Fraction(m**p, n ** (p - 1))
        + 2**q * Fraction(m**q, n ** (q - 1))
        - 2 * m
    )
    if value <= 0:
        return LogValue.zero()
    return LogValue.from_fraction(value)


def entropy_lb_basic(
    p: int, q: int, n1: int, n2: int, delta: float | Fraction
) -> LogValue:
    """delta^pq (n1^p n2^q + n1^q n2^p), in log10.  ZERO at delta = 0; at
    delta = 1 it coincides with the complete-target count."""
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    if delta == 0:
        return LogValue.zero()
    total = hom_kpq_complete_target(p, q, n1, n2)
    return LogValue(p * q * math.log10(float(delta)) + log10_of_int(total))


def sidorenko_lb(
    p: int, q: int, n1: int, n2: int, delta: float | Fraction
) -> LogValue:
    """(2 delta)^pq (n1+n2)^(p+q-2pq) (n1 n2)^pq, in log10."""
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    if delta == 0:
        return LogValue.zero()
    log10 = (
        p * q * math.log10(2 * float(delta))
        + (p + q - 2 * p * q) * log10_of_int(n1 + n2)
        + p * q * log10_of_int(n1 * n2)
    )
    return LogValue(log10)


def degree_entropies(profile: DegreeProfile) -> tuple[float, float]:
    """Shannon entropies (nats) of the per-edge normalized degree profiles:
    x over the left side, y over the right.  Zero-degree vertices carry no
    probability mass and contribute nothing."""
    m = profile.edge_count
    if m == 0:
        raise ValueError("degree entropies need at least one edge")

    def entropy(degrees) -> float:
        return sum(d / m * math.log(m / d) for d in degrees if d > 0)

    return entropy(profile.left_degrees), entropy(profile.right_degrees)


def entropy_lb_refined(
    p: int,
    q: int,
    n1: int,
    n2: int,
    delta: float | Fraction,
    x: float,
    y: float,
) -> LogValue:
    """Degree-profile refinement of the basic entropy bound: the sum of two
    three-way maxima over powers of (delta n1 n2), each damped by the
    entropies x and y (nats).  The outer sum is an exact log-sum-exp; the
    inner maxima compare log values directly, since their terms can differ
    by hundreds of orders of magnitude."""
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    if x < 0 or y < 0:
        raise ValueError("entropies must be nonnegative")
    if delta == 0:
        return LogValue.zero()
    base = math.log10(float(delta)) + log10_of_int(n1 * n2)
    first = max(
        p * q * base - (p * (q - 1) * x + q * (p - 1) * y) / LN10,
        q * base - (q - 1) * x / LN10,
        p * base - (p - 1) * y / LN10,
    )
    second = max(
        p * q * base - (q * (p - 1) * x + p * (q - 1) * y) / LN10,
        p * base - (p - 1) * x / LN10,
        q * base - (q - 1) * y / LN10,
    )
    return LogValue(first) + LogValue(second)


# ----------------------------------------------------------- upper bound


@dataclass(frozen=True)
class UpperBound:
    value: LogValue
    provenance: str  # census_formula | c4free_form | complete_target_fallback


def _source_view(f: SimpleGraph | BipartiteGraph) -> SimpleGraph:
    return f.as_simple_graph() if isinstance(f, BipartiteGraph) else f


def upper_bound_general(
    f: SimpleGraph | BipartiteGraph,
    g: BipartiteGraph,
    budget: int = DEFAULT_COUNT_BUDGET,
    census: BicliqueCensus | None = None,
    t_cache: dict | None = None,
) -> UpperBound:
    """|V(G)|^s (s = isolated source vertices) times the product over source
    edges {u,v} of T(d(u), d(v))^(1/(d(u) d(v))), where T(a,b) counts
    homomorphisms of the complete bipartite graph K_{a,b} into g.

    T comes from the combinatorial closed form when g is C4-free (the
    equality case), else from a biclique census when the budget allows, else
    from the complete-target count on K_{n1,n2} — still valid, since adding
    target edges never decreases a homomorphism count.  Equality holds when
    f is a disjoint union of complete bipartite graphs and isolated
    vertices.

    t_cache, when given, memoizes T(a,b) across calls; only pass a dict that
    is used with a single fixed target g."""
    fs = _source_view(f)
    n_target = g.n1 + g.n2
    isolated = sum(1 for a in fs.adj if a == 0)
    fe = fs.edges()
    if fs.n > 0 and n_target == 0:
        return UpperBound(LogValue.zero(), "complete_target_fallback")

    deg = [a.bit_count() for a in fs.adj]
    log10 = isolated * (log10_of_int(n_target) if n_target else 0.0)

    if is_c4_free(g):
        provenance = "c4free_form"

        def t_of(a: int, b: int) -> int:
            return combinatorial_lb(a, b, g)

    else:
        needed = max((max(deg[u], deg[v]) for u, v in fe), default=0)
        usable = census
        if usable is None or usable.k_max < needed or usable.l_max < needed:
            try:
                usable = biclique_census(g, needed, needed, budget) if needed else None
            except CensusBudgetError:
                usable = None
        if usable is not None and needed:
            provenance = "census_formula"
            table = usable

            def t_of(a: int, b: int) -> int:
                return exact_kpq_count(a, b, table)

        else:
            provenance = "census_formula" if not fe else "complete_target_fallback"

            def t_of(a: int, b: int) -> int:
                return hom_kpq_complete_target(a, b, g.n1, g.n2)

    for u, v in fe:
        key = (provenance, deg[u], deg[v])
        if t_cache is not None and key in t_cache:
            t = t_cache[key]
        else:
            t = t_of(deg[u], deg[v])
            if t_cache is not None:
                t_cache[key] = t
        if t == 0:
            return UpperBound(LogValue.zero(), provenance)
        log10 += log10_of_int(t) / (deg[u] * deg[v])
    return UpperBound(LogValue(log10), provenance)


# ----------------------------------------------------------- general LB


def general_lower_bound(
    f: SimpleGraph | BipartiteGraph,
    g: BipartiteGraph,
    budget: int = DEFAULT_COUNT_BUDGET,
    census: BicliqueCensus | None = None,
    eta_cache: dict[tuple[int, int], int] | None = None,
) -> int:
    """Component-decomposition lower bound on hom(f, g).

    Star components (one side of size <= 1, including isolated vertices and
    single edges) contribute their exact count sum_v d(v)^(leaf count).  A
    component with both sides >= 2 and sides (p, q) contributes the best of
    {exact complete-bipartite count when a census is affordable,
    ceil(combinatorial bound), ceil(refined entropy bound)} plus
    (p q - |E(component)|) times the single-edge-removal gain eta_{p,q}(g).
    Factors multiply across components.

    eta_cache, when given, memoizes eta values across calls; only pass a
    dict that is used with a single fixed target g."""
    fs = _source_view(f)
    bip = bipartition_of(fs)
    if bip is None:
        raise ValueError("source graph is not bipartite")

    delta = edge_density(g) if g.n1 and g.n2 else Fraction(0)
    if g.edge_count:
        x_nats, y_nats = degree_entropies(degree_profile(g))
    else:
        x_nats = y_nats = 0.0

    census_cache: dict[int, BicliqueCensus | None] = {}
    census_fail_floor: int | None = None
    if census is not None:
        census_cache[min(census.k_max, census.l_max)] = census

    def census_for(k: int) -> BicliqueCensus | None:
        nonlocal census_fail_floor
        for have, tab in census_cache.items():
            if tab is not None and have >= k:
                return tab
        if census_fail_floor is not None and k >= census_fail_floor:
            return None
        try:
            tab = biclique_census(g, k, k, budget)
        except CensusBudgetError:
            census_fail_floor = k
            census_cache[k] = None
            return None
        census_cache[k] = tab
        return tab

    if eta_cache is None:
        eta_cache = {}
    total = 1
    for comp in bip.components:
        left = sum(1 for v in comp if bip.color[v] == 0)
        right = len(comp) - left
        edges = sum(fs.adj[v].bit_count() for v in comp) // 2
        if min(left, right) <= 1:
            total *= star_count(edges, g)
        else:
            p, q = left, right
            candidates = [combinatorial_lb(p, q, g)]
            if g.edge_count:
                candidates.append(
                    entropy_lb_refined(p, q, g.n1, g.n2, delta, x_nats, y_nats).ceil_int()
                )
            table = census_for(max(p, q))
            if table is not None:
                candidates.append(exact_kpq_count(p, q, table))
            mu = max(candidates)
            removed = p * q - edges
            if removed:
                key = (p, q)
                if key not in eta_cache:
                    eta_cache[key] = eta(g, p, q).value
                mu += removed * eta_cache[key]
            total *= mu
        if total == 0:
            break
    return total


# ---------------------------------------------------------------- report


@dataclass
class BoundReport:
    instance: dict
    exact: int | None
    exact_method: str | None
    comb_lb: int | None
    entropy_lb_basic: LogValue | None
    entropy_lb_refined: LogValue | None
    sidorenko_lb: LogValue | None
    upper_bound: LogValue
    upper_bound_provenance: str
    general_lb: int
    x_nats: float | None
    y_nats: float | None
    flags: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        def log_or_null(v: LogValue | None):
            if v is None or v.is_zero:
                return None
            return v.log10

        return {
            "instance": self.instance,
            "exact": self.exact,
            "exact_method": self.exact_method,
            "comb_lb": self.comb_lb,
            "entropy_lb_basic_log10": log_or_null(self.entropy_lb_basic),
            "entropy_lb_refined_log10": log_or_null(self.entropy_lb_refined),
            "sidorenko_lb_log10": log_or_null(self.sidorenko_lb),
            "upper_bound_log10": log_or_null(self.upper_bound),
            "upper_bound_provenance": self.upper_bound_provenance,
            "general_lb": self.general_lb,
            "x_nats": self.x_nats,
            "y_nats": self.y_nats,
            "flags": list(self.flags),
        }


def bound_report(
    g: BipartiteGraph,
    f: SimpleGraph | BipartiteGraph | None = None,
    p: int | None = None,
    q: int | None = None,
    seed: int | None = None,
    source_id: str | None = None,
    budget: int = DEFAULT_COUNT_BUDGET,
    census: BicliqueCensus | None = None,
    validate: bool = True,
) -> BoundReport:
    """Evaluate every applicable bound for one instance.

    The source is either a complete bipartite K_{p,q} (pass p and q; the
    per-(p,q) lower bounds apply) or an explicit graph f (only the general
    bounds apply).  Real-valued lower bounds are ceilinged at the comparison
    boundary only; the report keeps raw log values.  When the exact count is
    affordable the sandwich lb <= exact <= ub is re-checked here, and a
    violation raises instead of emitting a bad report."""
    if (f is None) == (p is None and q is None):
        raise ValueError("pass exactly one of f or (p, q)")
    if f is None:
        if p is None or q is None or p < 1 or q < 1:
            raise ValueError("p and q must be at least 1")
        f = complete_bipartite(p, q)
        if source_id is None:
            source_id = f"K_{{{p},{q}}}"
    elif source_id is None:
        fs = _source_view(f)
        source_id = f"graph(n={fs.n},m={fs.edge_count})"

    delta = edge_density(g) if g.n1 and g.n2 else Fraction(0)
    flags: list[str] = []
    if is_c4_free(g):
        flags.append("c4_free")
    degs_zero = any(a == 0 for a in g.left_adj) or any(a == 0 for a in g.right_adj)
    if degs_zero and (g.n1 + g.n2) > 0:
        flags.append("sidorenko_isolated_vertices_caveat")

    if g.edge_count:
        x_nats, y_nats = degree_entropies(degree_profile(g))
    else:
        x_nats = y_nats = None

    comb = basic = refined = sid = None
    if p is not None and q is not None:
        comb = combinatorial_lb(p, q, g)
        basic = entropy_lb_basic(p, q, g.n1, g.n2, delta)
        sid = sidorenko_lb(p, q, g.n1, g.n2, delta)
        refined = entropy_lb_refined(
            p, q, g.n1, g.n2, delta, x_nats or 0.0, y_nats or 0.0
        )

    try:
        res = hom_count(f, g, budget)
        exact, exact_method = res.value, res.method
    except (CountBudgetError, CensusBudgetError):
        exact, exact_method = None, None
        flags.append("exact_unavailable")

    ub = upper_bound_general(f, g, budget, census)
    general = general_lower_bound(f, g, budget, census)

    report = BoundReport(
        instance={
            "n1": g.n1,
            "n2": g.n2,
            "delta": float(delta),
            "seed": seed,
            "source": source_id,
        },
        exact=exact,
        exact_method=exact_method,
        comb_lb=comb,
        entropy_lb_basic=basic,
        entropy_lb_refined=refined,
        sidorenko_lb=sid,
        upper_bound=ub.value,
        upper_bound_provenance=ub.provenance,
        general_lb=general,
        x_nats=x_nats,
        y_nats=y_nats,
        flags=flags,
    )
    if validate and exact is not None:
        _check_sandwich(report)
    return report


def _check_sandwich(report: BoundReport) -> None:
    exact = report.exact
    assert exact is not None
    failures = []
    for name, lb in (("comb_lb", report.comb_lb), ("general_lb", report.general_lb)):
        if lb is not None and lb > exact:
            failures.append(f"{name}={lb} > exact={exact}")
    for name, lv in (
        ("entropy_lb_basic", report.entropy_lb_basic),
        ("entropy_lb_refined", report.entropy_lb_refined),
        ("sidorenko_lb", report.sidorenko_lb),
    ):
        if lv is not None and lv.ceil_int() > exact:
            failures.append(f"ceil({name})={lv.ceil_int()} > exact={exact}")
    if exact > 0 and log10_of_int(exact) > report.upper_bound.log10 + _LOG_TOL:
        failures.append(
            f"exact log10={log10_of_int(exact):.12g} > "
            f"ub log10={report.upper_bound.log10:.12g}"
        )
    if failures:
        raise RuntimeError("bound sandwich violated: " + "; ".join(failures))
