"""Biclique census, common-neighborhood sums, the eta correction term, and
C4-free structure tests.

The census table N[k][l] counts pairs (A, B) with A a k-subset of the left
part, B an l-subset of the right part, and every A-B pair adjacent ("labelled
bipartite cliques" in the subset-pair reading: subsets are unordered, vertex
labels distinguish them).  Equivalently, each k-subset A with common
neighborhood of size c contributes C(c, l) to N[k][l].

Two interchangeable engines fill the table:

* a pruned depth-first enumeration over subsets (reference path), with a
  live step budget so infeasible requests fail predictably; and
* a vectorized path for subset sizes <= 4 that sums over *ordered* tuples
  via integer matrix products and then converts ordered-tuple sums to
  subset sums with a Stirling-number inversion.

Both are exact; tests assert they agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combin import stirling2
from .graphs import BipartiteGraph, SimpleGraph, _bits

DEFAULT_CENSUS_BUDGET = 10**8

# vectorized-path guards
_NUMPY_MAX_SIZE = 4
_NUMPY_FLOP_CAP = 4e9
_NUMPY_MEM_CAP = 3 * 10**8  # bytes for the largest intermediate
_INT64_CAP = 2**62


class CensusBudgetError(RuntimeError):
    """Census enumeration exceeded its step budget."""

    def __init__(self, steps: int, budget: int, estimate: int):
        self.steps = steps
        self.budget = budget
        self.estimate = estimate
        super().__init__(
            f"census enumeration aborted after {steps} steps "
            f"(budget {budget}); worst-case subset estimate {estimate}"
        )


class CensusCoverageError(ValueError):
    """A lookup needs table entries the census was not built to cover."""


@dataclass(frozen=True)
class BicliqueCensus:
    """Census table for one graph; ``value(k, l)`` is the safe accessor."""

    n1: int
    n2: int
    k_max: int
    l_max: int
    table: tuple[tuple[int, ...], ...]

    def value(self, k: int, l: int) -> int:
        if k < 1 or l < 1:
            raise ValueError("census indices start at 1")
        if k > self.n1 or l > self.n2:
            return 0  # no subset of that size exists
        if k <= self.k_max and l <= self.l_max:
            return self.table[k][l]
        raise CensusCoverageError(
            f"census covers k <= {self.k_max}, l <= {self.l_max}; "
            f"requested ({k},{l})"
        )


def census_subset_estimate(n_enum: int, size: int) -> int:
    """Worst-case number of subsets a census enumeration may visit."""
    return sum(math.comb(n_enum, j) for j in range(1, min(size, n_enum) + 1))


def _dfs_rows(
    adj: tuple[int, ...], n_enum: int, size: int, l_max: int, budget: int
) -> list[list[int]]:
    """Pruned subset DFS; rows[k][l] accumulates C(c(A), l) over k-subsets A.

    Branches whose running common neighborhood is empty are pruned: every
    superset would contribute C(0, l) = 0.
    """
    rows = [[0] * (l_max + 1) for _ in range(size + 1)]
    estimate = census_subset_estimate(n_enum, size)
    comb = math.comb
    steps = 0

    def rec(start: int, depth: int, inter: int) -> None:
        nonlocal steps
        nxt_depth = depth + 1
        row = rows[nxt_depth]
        for i in range(start, n_enum):
            steps += 1
            if steps > budget:
                raise CensusBudgetError(steps, budget, estimate)
            nxt = inter & adj[i]
            c = nxt.bit_count()
            if c == 0:
                continue
            for l in range(1, min(l_max, c) + 1):
                row[l] += comb(c, l)
            if nxt_depth < size:
                rec(i + 1, nxt_depth, nxt)

    if n_enum and size:
        rec(0, 0, -1)  # -1 has all bits set: the empty-set intersection
    return rows


def _bitsets_to_matrix(adj: tuple[int, ...], n_opp: int) -> np.ndarray:
    nbytes = (n_opp + 7) // 8
    packed = b"".join(int(a).to_bytes(nbytes, "little") for a in adj)
    arr = np.frombuffer(packed, dtype=np.uint8).reshape(len(adj), nbytes)
    bits = np.unpackbits(arr, axis=1, bitorder="little")[:, :n_opp]
    return bits.astype(np.float64)


def _binom_sums(arr: np.ndarray, l_max: int) -> list[int]:
    """[0, sum C(entry,1), ..., sum C(entry,l_max)] over an int64 array.

    One running falling-factorial pass: entries below l hit a zero factor
    and stay zero, so C(entry, l) = 0 comes out automatically.
    """
    out = [0] * (l_max + 1)
    prod = arr.astype(np.int64, copy=True)
    out[1] = int(prod.sum())
    for l in range(2, l_max + 1):
        prod *= arr - (l - 1)
        out[l] = int(prod.sum()) // math.factorial(l)
    return out


def _numpy_eligible(n_enum: int, n_opp: int, size: int, m: int, l_max: int) -> bool:
    if size > _NUMPY_MAX_SIZE or n_enum == 0 or n_opp == 0:
        return False
    # pre-division factor products reach n_opp**l_max per entry, and whole
    # arrays of them are summed in int64
    if n_enum * n_enum * n_opp**l_max >= _INT64_CAP:
        return False
    flops = 0.0
    if size >= 2:
        flops += float(n_enum) ** 2 * n_opp
    if size >= 3:
        flops += float(n_enum) ** 2 * m
    if size >= 4:
        flops += float(n_enum) ** 4 * n_opp
        if n_enum**4 * 8 > _NUMPY_MEM_CAP:
            return False
        if n_enum**4 * n_opp**l_max >= _INT64_CAP:
            return False
    return flops <= _NUMPY_FLOP_CAP


def _numpy_rows(
    adj: tuple[int, ...], n_enum: int, n_opp: int, size: int, l_max: int
) -> list[list[int]]:
    """Ordered-tuple sums via matrix products, then Stirling inversion.

    OS_k(l) = sum over ordered k-tuples (repeats allowed) of C(c, l), where
    c is the common-neighborhood size of the tuple's distinct entries.  A
    tuple whose distinct set has size j is one of j!*S(k,j) orderings, so
    OS_k(l) = sum_j j!*S(k,j)*N[j][l], which is solved for N[k][l] row by row.
    """
    # float32 keeps every matmul exact here (0/1 entries, sums <= n_opp < 2^24)
    # at twice the BLAS speed of float64
    A = _bitsets_to_matrix(adj, n_opp).astype(np.float32)
    os_rows: dict[int, list[int]] = {}

    degs = A.sum(axis=1, dtype=np.float64).astype(np.int64)
    os_rows[1] = _binom_sums(degs, l_max)

    if size >= 2:
        B = (A @ A.T).astype(np.int64)
        os_rows[2] = _binom_sums(B, l_max)

    if size >= 3:
        acc = [0] * (l_max + 1)
        for u in range(n_enum):
            cols = np.flatnonzero(A[u])
            if cols.size == 0:
                continue
            Au = A[:, cols]
            Bu = (Au @ Au.T).astype(np.int64)
            sums = _binom_sums(Bu, l_max)
            for l in range(1, l_max + 1):
                acc[l] += sums[l]
        os_rows[3] = acc

    if size >= 4:
        P = (A[:, None, :] * A[None, :, :]).reshape(n_enum * n_enum, n_opp)
        M = (P @ P.T).astype(np.int64)
        os_rows[4] = _binom_sums(M, l_max)

    rows = [[0] * (l_max + 1) for _ in range(size + 1)]
    for k in range(1, size + 1):
        fk = math.factorial(k)
        for l in range(1, l_max + 1):
            t = os_rows[k][l]
            for j in range(1, k):
                t -= math.factorial(j) * stirling2(k, j) * rows[j][l]
            q, r = divmod(t, fk)
            assert r == 0, "ordered-tuple inversion must be exact"
            rows[k][l] = q
    return rows


def biclique_census(
    g: BipartiteGraph, k_max: int, l_max: int, budget: int = DEFAULT_CENSUS_BUDGET
) -> BicliqueCensus:
    """Census of g covering 1 <= k <= k_max, 1 <= l <= l_max.

    Enumerates subsets on whichever side yields fewer of them; requests
    whose enumeration exceeds ``budget`` steps raise CensusBudgetError
    carrying the worst-case estimate, so callers can fall back to bounds.
    """
    if k_max < 1 or l_max < 1:
        raise ValueError("census extents must be at least 1")
    left_size = min(k_max, g.n1)
    right_size = min(l_max, g.n2)
    left_est = census_subset_estimate(g.n1, left_size)
    right_est = census_subset_estimate(g.n2, right_size)
    if right_est < left_est:
        sw = biclique_census(g.swap_sides(), l_max, k_max, budget)
        table = tuple(
            tuple(sw.table[l][k] for l in range(l_max + 1)) for k in range(k_max + 1)
        )
        return BicliqueCensus(g.n1, g.n2, k_max, l_max, table)

    m = g.edge_count
    if _numpy_eligible(g.n1, g.n2, left_size, m, min(l_max, g.n2)):
        rows = _numpy_rows(g.left_adj, g.n1, g.n2, left_size, l_max)
    else:
        rows = _dfs_rows(g.left_adj, g.n1, left_size, l_max, budget)
    table = tuple(
        tuple(rows[k][l] if k <= left_size else 0 for l in range(l_max + 1))
        for k in range(k_max + 1)
    )
    return BicliqueCensus(g.n1, g.n2, k_max, l_max, table)


def exact_kpq_count(p: int, q: int, census: BicliqueCensus, stirling=None) -> int:
    """Exact number of homomorphisms from the complete bipartite source
    with part sizes p, q into the censused graph.

    hom = sum over k <= p, l <= q of k! l! S(p,k) S(q,l) (N[k][l] + N[l][k]):
    the image is a biclique on (k, l) subsets one way or the other, and the
    surjection counts k! S(p,k) and l! S(q,l) count the ways onto it.
    """
    if p < 1 or q < 1:
        raise ValueError("part sizes must be at least 1")
    sval = stirling.value if stirling is not None else (lambda n, k: stirling2(n, k))
    total = 0
    for k in range(1, p + 1):
        sk = math.factorial(k) * sval(p, k)
        for l in range(1, q + 1):
            pair = census.value(k, l) + census.value(l, k)
            if pair:
                total += sk * math.factorial(l) * sval(q, l) * pair
    return total


@dataclass(frozen=True)
class EtaValue:
    p: int
    q: int
    value: int


def eta(g: BipartiteGraph, p: int, q: int) -> EtaValue:
    """Correction term for near-complete sources with one edge removed.

    Sums, over ordered vertex pairs (u, v) with {u,v} not an edge (u = v
    included), and over neighbors w of u with N(v) and N(w) intersecting,
    the quantity |N(v) cap N(w)|^(max(p,q)-1).  On a bipartite graph only
    cross-side pairs can contribute: for same-side pairs (and u = v) the
    sets N(v) and N(w) live on opposite sides, so they never meet.
    """
    if p < 2 or q < 2:
        raise ValueError("eta is defined for part sizes at least 2")
    e = max(p, q) - 1
    total = 0
    # u on the left, v on the right: N(v) and N(w) are both left-side sets
    for u in range(g.n1):
        nu = g.left_adj[u]
        for v in range(g.n2):
            if nu >> v & 1:
                continue
            nv = g.right_adj[v]
            for w in _bits(nu):
                t = (nv & g.right_adj[w]).bit_count()
                if t:
                    total += t**e
    # u on the right, v on the left: both N(v) and N(w) are right-side sets
    for u in range(g.n2):
        nu = g.right_adj[u]
        for v in range(g.n1):
            if g.left_adj[v] >> u & 1:
                continue
            nv = g.left_adj[v]
            for w in _bits(nu):
                t = (nv & g.left_adj[w]).bit_count()
                if t:
                    total += t**e
    return EtaValue(p, q, total)


def hom_k2q_neighborhood(g: BipartiteGraph | SimpleGraph, q: int) -> int:
    """Sum of |N(u) cap N(v)|^q over all ordered vertex pairs, u = v included.

    This is the exact homomorphism count from the complete bipartite source
    with part sizes (2, q): the two-vertex side lands on (u, v), and each of
    the q opposite vertices picks a common neighbor independently.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    if isinstance(g, SimpleGraph):
        adjs = (g.adj,)
    else:
        # cross-side pairs share no neighbors, so only same-side pairs count
        adjs = (g.left_adj, g.right_adj)
    total = 0
    for adj in adjs:
        n = len(adj)
        for u in range(n):
            au = adj[u]
            for v in range(n):
                t = (au & adj[v]).bit_count()
                if t:
                    total += t**q
    return total


def is_c4_free(g: BipartiteGraph) -> bool:
    """True iff no two distinct left vertices share two common neighbors."""
    for u in range(g.n1):
        au = g.left_adj[u]
        for v in range(u + 1, g.n1):
            if (au & g.left_adj[v]).bit_count() >= 2:
                return False
    return True


def max_edges_c4free(n: int) -> int:
    """floor(n(1 + sqrt(4n-3))/4): edge cap for C4-free graphs on n vertices."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return (n + math.isqrt(n * n * (4 * n - 3))) // 4


def max_edges_c4free_bipartite(n1: int, n2: int) -> int:
    """floor(n(1 + sqrt(4n-3-2*n1*n2/n))/4) with n = n1+n2: the bipartite
    refinement of the C4-free edge cap."""
    if n1 < 0 or n2 < 0 or n1 + n2 < 1:
        raise ValueError("part sizes must be nonnegative and not both zero")
    n = n1 + n2
    inner = n * n * (4 * n - 3) - 2 * n * n1 * n2
    return (n + math.isqrt(inner)) // 4
