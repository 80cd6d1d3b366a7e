"""Exact homomorphism counts and rigorous bounds for bipartite graphs."""

from .bounds import (
    BoundReport,
    bound_report,
    combinatorial_lb,
    entropy_lb_basic,
    entropy_lb_refined,
    general_lower_bound,
    sidorenko_lb,
    upper_bound_general,
)
from .census import biclique_census, eta, exact_kpq_count, is_c4_free
from .counting import brute_force_hom, hom_count, hom_density, one_sided_exact_hom
from .graphs import (
    BipartiteGraph,
    SimpleGraph,
    complete_bipartite,
    cycle_graph,
    path_graph,
    random_bipartite,
    read_graph,
    write_graph,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "BoundReport",
    "SimpleGraph",
    "biclique_census",
    "bound_report",
    "brute_force_hom",
    "combinatorial_lb",
    "complete_bipartite",
    "cycle_graph",
    "entropy_lb_basic",
    "entropy_lb_refined",
    "eta",
    "exact_kpq_count",
    "general_lower_bound",
    "hom_count",
    "hom_density",
    "is_c4_free",
    "one_sided_exact_hom",
    "path_graph",
    "random_bipartite",
    "read_graph",
    "sidorenko_lb",
    "upper_bound_general",
    "write_graph",
]
