"""Graph representations, bipartition handling, serialization, random generation.

Adjacency is stored as Python int bitsets (bit v set = neighbor v), which
makes neighborhood intersection a single ``&`` and degree a ``bit_count()``.
All graph values are immutable after construction and safe to share.

Usage:
    g, dens = random_bipartite(20, 30, Fraction(1, 4), seed=7)
    prof = degree_profile(g)
    write_graph(g, "inst.graph")
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, NamedTuple


class GraphFormatError(ValueError):
    """Raised for malformed graph files; the message names the line."""


def _bits(mask: int):
    """Iterate set bit positions of an int bitset, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BipartiteGraph:
    """Bipartite graph with parts of sizes n1 (left, U) and n2 (right, V).

    Edges connect left to right only.  ``left_adj[u]`` is the bitset of
    right neighbors of u; ``right_adj[v]`` is kept as the exact transpose.
    """

    __slots__ = ("n1", "n2", "left_adj", "right_adj")

    def __init__(self, n1: int, n2: int, edges: Iterable[tuple[int, int]] = ()):
        if n1 < 0 or n2 < 0:
            raise ValueError("part sizes must be nonnegative")
        left = [0] * n1
        right = [0] * n2
        for u, v in edges:
            if not (0 <= u < n1 and 0 <= v < n2):
                raise ValueError(f"edge ({u},{v}) out of range for parts {n1}x{n2}")
            if left[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u},{v})")
            left[u] |= 1 << v
            right[v] |= 1 << u
        self.n1 = n1
        self.n2 = n2
        self.left_adj = tuple(left)
        self.right_adj = tuple(right)

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.left_adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n1) for v in _bits(self.left_adj[u])]

    def degree_left(self, u: int) -> int:
        return self.left_adj[u].bit_count()

    def degree_right(self, v: int) -> int:
        return self.right_adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.left_adj[u] >> v & 1)

    def as_simple_graph(self) -> "SimpleGraph":
        """The same graph on n1+n2 vertices; left first, then right."""
        return SimpleGraph(
            self.n1 + self.n2, [(u, self.n1 + v) for u, v in self.edges()]
        )

    def swap_sides(self) -> "BipartiteGraph":
        """The same graph with U and V exchanged."""
        return BipartiteGraph(self.n2, self.n1, [(v, u) for u, v in self.edges()])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BipartiteGraph)
            and self.n1 == other.n1
            and self.n2 == other.n2
            and self.left_adj == other.left_adj
        )

    def __hash__(self) -> int:
        return hash((self.n1, self.n2, self.left_adj))

    def __repr__(self) -> str:
        return f"BipartiteGraph(n1={self.n1}, n2={self.n2}, m={self.edge_count})"


class SimpleGraph:
    """Undirected simple graph; ``adj[i]`` is the neighbor bitset of i."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if adj[i] >> j & 1:
                raise ValueError(f"duplicate edge ({i},{j})")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self.n = n
        self.adj = tuple(adj)

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i]) if i < j]

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimpleGraph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class DegreeProfile:
    left_degrees: tuple[int, ...]
    right_degrees: tuple[int, ...]
    edge_count: int


@dataclass(frozen=True)
class Bipartition:
    """A 2-coloring of a simple graph; color 0 = left, 1 = right.

    Isolated vertices (and more generally each component's smallest vertex)
    land on the left, so the coloring is canonical.
    """

    color: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def left(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.color) if c == 0)

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.color) if c == 1)


class RandomBipartite(NamedTuple):
    graph: BipartiteGraph
    realized_density: Fraction


# ------------------------------------------------------------------ operations


def bipartition_of(g: SimpleGraph) -> Bipartition | None:
    """2-color g by BFS per component; None if any component has an odd cycle.

    Each component is explored from its smallest vertex, which gets color 0,
    so isolated vertices are left by convention.
    """
    color: list[int] = [-1] * g.n
    components: list[tuple[int, ...]] = []
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        comp = []
        while queue:
            v = queue.pop()
            comp.append(v)
            for w in _bits(g.adj[v]):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
        components.append(tuple(sorted(comp)))
    return Bipartition(color=tuple(color), components=tuple(components))


def component_to_bipartite(
    g: SimpleGraph, bip: Bipartition, comp: tuple[int, ...]
) -> BipartiteGraph:
    """Induced subgraph on one component, as a BipartiteGraph.

    Left vertices are the comp members with color 0, in ascending order;
    likewise right.  A single isolated vertex becomes (n1=1, n2=0).
    """
    left = [v for v in comp if bip.color[v] == 0]
    right = [v for v in comp if bip.color[v] == 1]
    lidx = {v: i for i, v in enumerate(left)}
    ridx = {v: i for i, v in enumerate(right)}
    edges = []
    for v in left:
        for w in _bits(g.adj[v]):
            edges.append((lidx[v], ridx[w]))
    return BipartiteGraph(len(left), len(right), edges)


def to_bipartite(g: SimpleGraph) -> BipartiteGraph | None:
    """Whole-graph bipartite view under the canonical 2-coloring, or None."""
    bip = bipartition_of(g)
    if bip is None:
        return None
    allv = tuple(range(g.n))
    return component_to_bipartite(g, bip, allv)


def edge_density(g: BipartiteGraph) -> Fraction:
    """|E|/(n1*n2) as an exact rational; degenerate part sizes rejected."""
    if g.n1 == 0 or g.n2 == 0:
        raise ValueError("edge density undefined for empty parts")
    return Fraction(g.edge_count, g.n1 * g.n2)


def degree_profile(g: BipartiteGraph) -> DegreeProfile:
    left = tuple(a.bit_count() for a in g.left_adj)
    right = tuple(a.bit_count() for a in g.right_adj)
    assert sum(left) == sum(right)
    return DegreeProfile(left, right, sum(left))


def _as_fraction(delta) -> Fraction:
    # Floats go through str() so 0.01 means 1/100, not its binary neighbor.
    if isinstance(delta, float):
        return Fraction(str(delta))
    return Fraction(delta)


def round_half_up(x: Fraction) -> int:
    """floor(x + 1/2) — avoids banker's rounding on exact halves."""
    y = x + Fraction(1, 2)
    return y.numerator // y.denominator


def random_bipartite(n1: int, n2: int, delta, seed: int) -> RandomBipartite:
    """Uniform random bipartite graph with exactly round(delta*n1*n2) edges.

    The m edges are an m-subset of the n1*n2 candidate slots, drawn by a
    partial Fisher-Yates shuffle of the slot indices; slot e encodes the
    edge (e // n2, e % n2).  Bit-for-bit reproducible given (seed, n1, n2, m).

    Returns the graph together with the realized density m/(n1*n2).
    """
    d = _as_fraction(delta)
    if not 0 <= d <= 1:
        raise ValueError("delta must lie in [0, 1]")
    total = n1 * n2
    m = round_half_up(d * total)
    rng = random.Random(seed)
    pool = list(range(total))
    for i in range(m):
        j = rng.randrange(i, total)
        pool[i], pool[j] = pool[j], pool[i]
    edges = [(e // n2, e % n2) for e in pool[:m]]
    g = BipartiteGraph(n1, n2, edges)
    return RandomBipartite(g, Fraction(m, total) if total else Fraction(0))


def complete_bipartite(n1: int, n2: int) -> BipartiteGraph:
    return BipartiteGraph(n1, n2, [(u, v) for u in range(n1) for v in range(n2)])


def path_graph(n: int) -> SimpleGraph:
    """Path on n vertices (n-1 edges)."""
    return SimpleGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SimpleGraph:
    """Cycle on n >= 3 vertices."""
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return SimpleGraph(n, [(i, (i + 1) % n) for i in range(n)])


def tensor_product(g1: SimpleGraph, g2: SimpleGraph) -> SimpleGraph:
    """Categorical product: (i1,i2) ~ (j1,j2) iff i1~j1 and i2~j2."""
    n2 = g2.n
    edges = []
    for i1, j1 in g1.edges():
        for i2, j2 in g2.edges():
            # each pair of factor edges contributes two product edges
            edges.append((i1 * n2 + i2, j1 * n2 + j2))
            edges.append((i1 * n2 + j2, j1 * n2 + i2))
    return SimpleGraph(g1.n * n2, edges)


# ------------------------------------------------------------------ file I/O
#
# Text format (UTF-8, '#' starts a comment):
#   bipartite <n1> <n2>      followed by   e <u> <v>   with 1<=u<=n1, 1<=v<=n2
#   graph <n>                followed by   e <i> <j>   with 1<=i<j<=n


def read_graph(path) -> SimpleGraph | BipartiteGraph:
    """Parse a graph file; raises GraphFormatError naming the offending line."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = None
    header_no = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for no, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        if header is None:
            if parts[0] == "bipartite" and len(parts) == 3:
                try:
                    header = ("bipartite", int(parts[1]), int(parts[2]))
                except ValueError:
                    raise GraphFormatError(f"line {no}: malformed header {text!r}")
            elif parts[0] == "graph" and len(parts) == 2:
                try:
                    header = ("graph", int(parts[1]), 0)
                except ValueError:
                    raise GraphFormatError(f"line {no}: malformed header {text!r}")
            else:
                raise GraphFormatError(f"line {no}: malformed header {text!r}")
            header_no = no
            continue
        if parts[0] != "e" or len(parts) != 3:
            raise GraphFormatError(f"line {no}: expected 'e <a> <b>', got {text!r}")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphFormatError(f"line {no}: non-integer endpoint in {text!r}")
        kind, s1, s2 = header
        if kind == "bipartite":
            if not (1 <= a <= s1 and 1 <= b <= s2):
                raise GraphFormatError(
                    f"line {no}: endpoint out of range for parts {s1}x{s2}"
                )
        else:
            if a == b:
                raise GraphFormatError(f"line {no}: loop at vertex {a}")
            if not (1 <= a < b <= s1):
                raise GraphFormatError(
                    f"line {no}: endpoints must satisfy 1 <= i < j <= {s1}"
                )
        if (a, b) in seen:
            raise GraphFormatError(f"line {no}: duplicate edge ({a},{b})")
        seen.add((a, b))
        edges.append((a - 1, b - 1))
    if header is None:
        raise GraphFormatError("line 1: missing header")
    kind, s1, s2 = header
    del header_no
    if kind == "bipartite":
        return BipartiteGraph(s1, s2, edges)
    return SimpleGraph(s1, edges)


def format_graph(g: SimpleGraph | BipartiteGraph) -> str:
    """Render g in the text format accepted by read_graph."""
    out = []
    if isinstance(g, BipartiteGraph):
        out.append(f"bipartite {g.n1} {g.n2}")
        for u, v in g.edges():
            out.append(f"e {u + 1} {v + 1}")
    else:
        out.append(f"graph {g.n}")
        for i, j in g.edges():
            out.append(f"e {i + 1} {j + 1}")
    return "\n".join(out) + "\n"


def write_graph(g: SimpleGraph | BipartiteGraph, path) -> None:
    """Write g in the text format; read_graph round-trips it."""
    Path(path).write_text(format_graph(g), encoding="utf-8")
