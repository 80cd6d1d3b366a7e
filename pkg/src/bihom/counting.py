"""Exact homomorphism counting.

Four interchangeable engines, from slowest and most general to fastest and
most specialized:

* ``brute_force_hom`` — the literal definition: enumerate every vertex map
  and check every source edge.  The oracle everything else is tested against.
* ``one_sided_exact_hom`` — for bipartite sources: per connected component,
  enumerate images of one side only; each opposite-side vertex contributes
  the size of the common neighborhood of its neighbors' images.  The two
  side-orientations of a component are disjoint and summed; component counts
  multiply.
* census formula — for complete bipartite sources into bipartite targets
  (see the census module).
* closed forms — complete bipartite / cycle / path / tree targets.

``hom_count`` dispatches in the reverse of that order and reports which
engine fired.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from string import ascii_letters

import numpy as np

from .census import CensusBudgetError, biclique_census, exact_kpq_count
from .combin import LogValue, log10_of_int
from .graphs import BipartiteGraph, SimpleGraph, _bits, bipartition_of, to_bipartite

DEFAULT_COUNT_BUDGET = 10**8

_INT64_CAP = 2**62
_TENSOR_MEM_CAP = 2 * 10**8  # bytes across all neighborhood tensors


class CountBudgetError(RuntimeError):
    """An exact count would exceed its operation budget."""

    def __init__(self, estimate: int, budget: int, what: str):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"{what} needs an estimated {estimate} operations (budget {budget})"
        )


@dataclass(frozen=True)
class HomCountResult:
    value: int
    method: str  # brute | one_sided | census_formula | closed_form | identity
    cost_estimate: int


# ------------------------------------------------------------- brute force


def brute_force_hom(
    f: SimpleGraph | BipartiteGraph,
    g: SimpleGraph | BipartiteGraph,
    budget: int = DEFAULT_COUNT_BUDGET,
) -> int:
    """Count homomorphisms by enumerating all |V(G)|^|V(F)| vertex maps.

    The budget is measured in mapping-edge checks, |V(G)|^|V(F)| * |E(F)|;
    a breach raises CountBudgetError carrying that figure.
    """
    fs = f.as_simple_graph() if isinstance(f, BipartiteGraph) else f
    gs = g.as_simple_graph() if isinstance(g, BipartiteGraph) else g
    k, n = fs.n, gs.n
    if k == 0:
        return 1
    if n == 0:
        return 0
    fe = fs.edges()
    checks = n**k * max(1, len(fe))
    if checks > budget:
        raise CountBudgetError(checks, budget, "brute-force enumeration")
    if not fe:
        return n**k
    adj = np.zeros((n, n), dtype=bool)
    for i, j in gs.edges():
        adj[i, j] = adj[j, i] = True
    total_maps = n**k
    count = 0
    chunk = 1 << 16
    for start in range(0, total_maps, chunk):
        idx = np.arange(start, min(start + chunk, total_maps), dtype=np.int64)
        digits = []
        for _ in range(k):
            digits.append(idx % n)
            idx = idx // n
        valid = np.ones(digits[0].shape, dtype=bool)
        for a, b in fe:
            valid &= adj[digits[a], digits[b]]
        count += int(valid.sum())
    return count


# ------------------------------------------------------------- one-sided


def _neighborhood_tensor(x_adj: tuple[int, ...], d: int) -> np.ndarray:
    """T[x1..xd] = |N(x1) cap ... cap N(xd)| for vertices of one target side.

    Built with float32 matrix products (exact for 0/1 data with sums below
    2^24) and returned as int64.
    """
    nx = len(x_adj)
    if d == 1:
        return np.array([a.bit_count() for a in x_adj], dtype=np.int64)
    n_opp = max((a.bit_length() for a in x_adj), default=0)
    nbytes = (n_opp + 7) // 8
    packed = b"".join(int(a).to_bytes(nbytes, "little") for a in x_adj)
    bits = np.unpackbits(
        np.frombuffer(packed, dtype=np.uint8).reshape(nx, nbytes),
        axis=1,
        bitorder="little",
    )[:, :n_opp].astype(np.float32)
    if d == 2:
        return (bits @ bits.T).astype(np.int64)
    if d == 3:
        out = np.empty((nx, nx, nx), dtype=np.int64)
        for x in range(nx):
            masked = bits * bits[x]
            out[x] = (masked @ bits.T).astype(np.int64)
        return out
    assert d == 4
    out = np.empty((nx, nx, nx, nx), dtype=np.int64)
    for x in range(nx):
        masked = bits * bits[x]
        for y in range(nx):
            out[x, y] = ((masked * bits[y]) @ bits.T).astype(np.int64)
    return out


def _orientation_count(
    n_enum_side: int, x_adj: tuple[int, ...], opp_nbrs: list[list[int]]
) -> int:
    """Sum over assignments of the enumerated side into the x_adj vertices of
    the product, over opposite-side vertices, of common-neighborhood sizes.

    opp_nbrs[q] lists the enumerated-side positions adjacent to q.
    """
    nx = len(x_adj)
    if not opp_nbrs:
        return nx**n_enum_side
    if nx == 0:
        return 0

    arities = sorted({len(nb) for nb in opp_nbrs})
    tensor_mem = sum(8 * nx**d for d in arities)
    numpy_ok = (
        n_enum_side <= 26
        and max(arities) <= 4
        and tensor_mem <= _TENSOR_MEM_CAP
        and (max(arities) < 4 or nx <= 24)
    )
    if numpy_ok:
        tensors = {d: _neighborhood_tensor(x_adj, d) for d in arities}
        bound = nx**n_enum_side
        for nb in opp_nbrs:
            bound *= int(tensors[len(nb)].max(initial=0))
        if bound < _INT64_CAP:
            expr = (
                ",".join("".join(ascii_letters[i] for i in nb) for nb in opp_nbrs)
                + "->"
            )
            ops = [tensors[len(nb)] for nb in opp_nbrs]
            # enumerated positions no opposite vertex references are free choices
            free = n_enum_side - len({i for nb in opp_nbrs for i in nb})
            return int(np.einsum(expr, *ops, optimize=True)) * nx**free

    # big-int fallback: literal enumeration with zero-product pruning
    count = 0
    for phi in product(range(nx), repeat=n_enum_side):
        term = 1
        for nb in opp_nbrs:
            inter = -1
            for p in nb:
                inter &= x_adj[phi[p]]
            t = inter.bit_count() if inter >= 0 else 0
            if t == 0:
                term = 0
                break
            term *= t
        count += term
    return count


def one_sided_exact_hom(
    f: SimpleGraph | BipartiteGraph,
    g: BipartiteGraph,
    budget: int = DEFAULT_COUNT_BUDGET,
) -> int:
    """Exact hom count for a bipartite source into a bipartite target.

    Per connected component of f, both side-orientations are counted and
    summed (they are disjoint for any component, and exhaustive because a
    connected component maps one side entirely into one side of g);
    component counts multiply.  A non-bipartite f yields 0: any odd cycle
    has no image in a bipartite graph.

    The budget is measured in assignment steps — enumerated assignments
    times opposite-side vertices, accumulated over components — and is
    charged up front per orientation, so breaches are predictable.
    """
    fs = f.as_simple_graph() if isinstance(f, BipartiteGraph) else f
    bip = bipartition_of(fs)
    if bip is None:
        return 0
    sides = ((g.left_adj, g.right_adj), (g.right_adj, g.left_adj))
    spent = 0
    total = 1
    for comp in bip.components:
        if len(comp) == 1:
            # an isolated source vertex maps anywhere in the target
            total *= g.n1 + g.n2
            if total == 0:
                break
            continue
        left = [v for v in comp if bip.color[v] == 0]
        right = [v for v in comp if bip.color[v] == 1]
        comp_total = 0
        for x_adj, y_adj in sides:
            # enumerate whichever side of the component is cheaper here:
            # F-left over this g-side, or F-right over the opposite one
            cost_l = len(x_adj) ** len(left) * max(1, len(right))
            cost_r = len(y_adj) ** len(right) * max(1, len(left))
            if cost_l <= cost_r:
                enum_side, opp_side, adj = left, right, x_adj
                cost = cost_l
            else:
                enum_side, opp_side, adj = right, left, y_adj
                cost = cost_r
            spent += cost
            if spent > budget:
                raise CountBudgetError(spent, budget, "one-sided enumeration")
            pos = {v: i for i, v in enumerate(enum_side)}
            opp_nbrs = [
                [pos[w] for w in _bits(fs.adj[q])] for q in opp_side
            ]
            comp_total += _orientation_count(len(enum_side), adj, opp_nbrs)
        total *= comp_total
        if total == 0:
            break
    return total


# ------------------------------------------------------------- closed forms


def hom_kpq_complete_target(p: int, q: int, n1: int, n2: int) -> int:
    """n1^p n2^q + n1^q n2^p: complete bipartite source into complete target."""
    if min(p, q, n1, n2) < 1:
        raise ValueError("all parameters must be at least 1")
    return n1**p * n2**q + n1**q * n2**p


def hom_kpq_cycle(p: int, q: int, n: int) -> int:
    """Complete bipartite source into the n-cycle.

    n = 4 is the complete bipartite case 2^(p+q+1); every other cycle gives
    n (2^p + 2^q - 2).
    """
    if n < 3:
        raise ValueError("cycle targets need n >= 3")
    if n == 4:
        return 2 ** (p + q + 1)
    return n * (2**p + 2**q - 2)


def hom_kpq_path(p: int, q: int, length: int) -> int:
    """Complete bipartite source into the path on `length` >= 2 vertices:
    (length-2)(2^p + 2^q - 2) + 2."""
    if length < 2:
        raise ValueError("path targets need at least 2 vertices")
    return (length - 2) * (2**p + 2**q - 2) + 2


def hom_kpq_path_product(p: int, q: int, lengths) -> int:
    """Product over factors: the tensor product of paths multiplies counts."""
    total = 1
    for length in lengths:
        total *= hom_kpq_path(p, q, length)
    return total


def hom_kpq_tree(p: int, q: int, t: BipartiteGraph) -> int:
    """Complete bipartite source into a tree: sum_w (d(w)^p + d(w)^q) - 2(n-1)."""
    n = t.n1 + t.n2
    if t.edge_count != n - 1 or not _is_connected_bipartite(t):
        raise ValueError("target is not a tree")
    degs = [a.bit_count() for a in t.left_adj] + [a.bit_count() for a in t.right_adj]
    return sum(d**p + d**q for d in degs) - 2 * (n - 1)


def _is_connected_bipartite(g: BipartiteGraph) -> bool:
    n = g.n1 + g.n2
    if n == 0:
        return True
    bip = bipartition_of(g.as_simple_graph())
    return bip is not None and len(bip.components) == 1


def star_count(m: int, g: BipartiteGraph | SimpleGraph) -> int:
    """Sum of d(v)^m over all vertices, with 0^0 = 1 (so m=0 gives |V|)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if isinstance(g, BipartiteGraph):
        degs = [a.bit_count() for a in g.left_adj]
        degs += [a.bit_count() for a in g.right_adj]
    else:
        degs = [a.bit_count() for a in g.adj]
    return sum(1 if d == 0 and m == 0 else d**m for d in degs)


# ------------------------------------------------------------- dispatcher


def _complete_bipartite_shape(f: SimpleGraph | BipartiteGraph) -> tuple[int, int] | None:
    if isinstance(f, BipartiteGraph):
        fb = f
    else:
        fb = to_bipartite(f)
        if fb is None:
            return None
    if fb.n1 >= 1 and fb.n2 >= 1 and fb.edge_count == fb.n1 * fb.n2:
        return fb.n1, fb.n2
    return None


def _is_connected_simple(g: SimpleGraph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        new = g.adj[v] & ~seen
        seen |= new
        stack.extend(_bits(new))
    return seen.bit_count() == g.n


def _cycle_length(g: SimpleGraph) -> int | None:
    if g.n >= 3 and all(a.bit_count() == 2 for a in g.adj) and _is_connected_simple(g):
        return g.n
    return None


def _path_length(g: SimpleGraph) -> int | None:
    if g.n < 2 or g.edge_count != g.n - 1 or not _is_connected_simple(g):
        return None
    degs = sorted(a.bit_count() for a in g.adj)
    if degs[:2] == [1, 1] and all(d == 2 for d in degs[2:]):
        return g.n
    return None


def hom_count(
    f: SimpleGraph | BipartiteGraph,
    g: SimpleGraph | BipartiteGraph,
    budget: int = DEFAULT_COUNT_BUDGET,
) -> HomCountResult:
    """Count homomorphisms from f to g with the cheapest applicable engine.

    Dispatch order: closed form (complete bipartite source and a recognized
    target family), census formula, one-sided enumeration, brute force.
    A non-bipartite source against a bipartite target short-circuits to 0.
    """
    fs = f.as_simple_graph() if isinstance(f, BipartiteGraph) else f
    gs = g.as_simple_graph() if isinstance(g, BipartiteGraph) else g
    if fs.n == 0:
        return HomCountResult(1, "identity", 0)
    gb = g if isinstance(g, BipartiteGraph) else to_bipartite(gs)

    if bipartition_of(fs) is None:
        if gb is not None:
            # an odd cycle of the source has no image in a bipartite target
            return HomCountResult(0, "identity", 0)
        value = brute_force_hom(fs, gs, budget)
        return HomCountResult(value, "brute", gs.n**fs.n * max(1, fs.edge_count))

    pq = _complete_bipartite_shape(f)
    if pq is not None:
        p, q = pq
        if gb is not None and gb.n1 >= 1 and gb.n2 >= 1:
            if gb.edge_count == gb.n1 * gb.n2:
                value = hom_kpq_complete_target(p, q, gb.n1, gb.n2)
                return HomCountResult(value, "closed_form", 1)
        n_cycle = _cycle_length(gs)
        if n_cycle is not None:
            return HomCountResult(hom_kpq_cycle(p, q, n_cycle), "closed_form", 1)
        n_path = _path_length(gs)
        if n_path is not None:
            return HomCountResult(hom_kpq_path(p, q, n_path), "closed_form", 1)
        if gb is not None:
            try:
                k = max(p, q)
                census = biclique_census(gb, k, k, budget)
                value = exact_kpq_count(p, q, census)
                est = sum(math.comb(gb.n1, j) for j in range(1, min(k, gb.n1) + 1))
                return HomCountResult(value, "census_formula", est)
            except CensusBudgetError:
                pass

    if gb is not None:
        try:
            value = one_sided_exact_hom(fs, gb, budget)
            return HomCountResult(value, "one_sided", _one_sided_estimate(fs, gb))
        except CountBudgetError:
            pass

    value = brute_force_hom(fs, gs, budget)
    return HomCountResult(value, "brute", gs.n**fs.n * max(1, fs.edge_count))


def _one_sided_estimate(fs: SimpleGraph, g: BipartiteGraph) -> int:
    bip = bipartition_of(fs)
    if bip is None:
        return 0
    est = 0
    for comp in bip.components:
        nl = sum(1 for v in comp if bip.color[v] == 0)
        nr = len(comp) - nl
        for na, nb in ((g.n1, g.n2), (g.n2, g.n1)):
            est += min(na**nl * max(1, nr), nb**nr * max(1, nl))
    return est


def hom_density(
    f: SimpleGraph | BipartiteGraph,
    g: SimpleGraph | BipartiteGraph,
    budget: int = DEFAULT_COUNT_BUDGET,
) -> LogValue:
    """hom(f,g) / v(g)^v(f) as a log-domain value (the probability that a
    uniformly random vertex map is a homomorphism)."""
    fs_n = f.n1 + f.n2 if isinstance(f, BipartiteGraph) else f.n
    gs_n = g.n1 + g.n2 if isinstance(g, BipartiteGraph) else g.n
    value = hom_count(f, g, budget).value
    if value == 0:
        return LogValue.zero()
    if gs_n == 0:
        raise ValueError("density undefined for an empty target")
    return LogValue(log10_of_int(value) - fs_n * log10_of_int(gs_n))
