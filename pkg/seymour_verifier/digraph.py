"""
Oriented digraphs, positive-distance neighborhoods and Seymour-vertex statistics.

Positive distance dist(u, v) is the length of the shortest non-trivial
directed walk from u to v, so dist(u, u) is the length of the shortest cycle
through u (at least 3 in an oriented digraph, infinite if there is none).
All tie-breaks pick the smallest vertex index.
"""

import logging
import math
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

import pandas as pd

from .errors import DigraphError, EmptyNeighborhoodError, PartitionError, PreconditionError

logger = logging.getLogger(__name__)

INFINITY = math.inf
Distance = Union[int, float]


@dataclass(frozen=True)
class OrientedDigraph:
    """Loop-free, digon-free digraph on vertices 0..n-1 with sorted out-adjacency."""

    n: int
    out_adj: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise DigraphError(f"vertex count must be nonnegative, got {self.n}")
        if len(self.out_adj) != self.n:
            raise DigraphError(f"expected {self.n} adjacency rows, got {len(self.out_adj)}")
        for u, row in enumerate(self.out_adj):
            for a, b in zip(row, row[1:]):
                if a >= b:
                    raise DigraphError(f"out-adjacency of {u} is not strictly increasing")
            for v in row:
                if not 0 <= v < self.n:
                    raise DigraphError(f"arc ({u}, {v}) has an endpoint out of range")
                if v == u:
                    raise DigraphError(f"loop at vertex {u}")
                if _contains(self.out_adj[v], u):
                    raise DigraphError(f"digon between {min(u, v)} and {max(u, v)}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]]) -> 'OrientedDigraph':
        rows: List[set] = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"arc ({u}, {v}) has an endpoint out of range [0, {n})")
            if u == v:
                raise DigraphError(f"loop at vertex {u}")
            if v in rows[u]:
                raise DigraphError(f"duplicate arc ({u}, {v})")
            if u in rows[v]:
                raise DigraphError(f"digon between {min(u, v)} and {max(u, v)}")
            rows[u].add(v)
        return cls(n, tuple(tuple(sorted(row)) for row in rows))

    @cached_property
    def in_adj(self) -> Tuple[Tuple[int, ...], ...]:
        rows: List[List[int]] = [[] for _ in range(self.n)]
        for u, row in enumerate(self.out_adj):
            for v in row:
                rows[v].append(u)
        return tuple(tuple(row) for row in rows)

    def arcs(self) -> Iterator[Tuple[int, int]]:
        for u, row in enumerate(self.out_adj):
            for v in row:
                yield u, v

    @property
    def arc_count(self) -> int:
        return sum(len(row) for row in self.out_adj)

    def has_arc(self, u: int, v: int) -> bool:
        return _contains(self.out_adj[u], v)

    def out_degree(self, u: int) -> int:
        return len(self.out_adj[u])

    def min_out_degree(self) -> int:
        return min((len(row) for row in self.out_adj), default=0)


def _contains(row: Sequence[int], value: int) -> bool:
    k = bisect_left(row, value)
    return k < len(row) and row[k] == value


def _check_vertex(D: OrientedDigraph, u: int):
    if not 0 <= u < D.n:
        raise PreconditionError(f"vertex {u} out of range [0, {D.n})")


@dataclass(frozen=True)
class VertexStats:
    d1: int
    d2: int
    d3: int


@dataclass(frozen=True)
class Neighborhoods:
    """Vertices at positive distance exactly 1, 2 and 3 from a vertex."""

    first: FrozenSet[int]
    second: FrozenSet[int]
    third: FrozenSet[int]

    @property
    def stats(self) -> VertexStats:
        return VertexStats(len(self.first), len(self.second), len(self.third))


@dataclass(frozen=True)
class Selection:
    u: int
    v: int
    w: object


@dataclass(frozen=True)
class PartitionCounts:
    """|X_ij|: vertices y with dist(u, y) = i and dist(v, y) = j (j = 4 meaning >= 4)."""

    x11: int = 0
    x12: int = 0
    x13: int = 0
    x14: int = 0
    x21: int = 0
    x22: int = 0
    x23: int = 0
    x24: int = 0
    x31: int = 0
    x32: int = 0
    x33: int = 0
    x34: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def positive_distances(D: OrientedDigraph, u: int) -> List[Distance]:
    """Positive distance from u to every vertex (math.inf when unreachable)."""
    _check_vertex(D, u)
    dist: List[Distance] = [INFINITY] * D.n
    dist[u] = 0
    queue = deque([u])
    while queue:
        z = queue.popleft()
        for y in D.out_adj[z]:
            if dist[y] == INFINITY:
                dist[y] = dist[z] + 1
                queue.append(y)
    # u itself: close the shortest cycle through one of its in-neighbors
    dist[u] = min((dist[z] + 1 for z in D.in_adj[u] if dist[z] != INFINITY), default=INFINITY)
    return dist


def neighborhoods(D: OrientedDigraph, u: int) -> Neighborhoods:
    dist = positive_distances(D, u)
    layers: Dict[int, set] = {1: set(), 2: set(), 3: set()}
    for y, d in enumerate(dist):
        if d in layers:
            layers[d].add(y)
    return Neighborhoods(frozenset(layers[1]), frozenset(layers[2]), frozenset(layers[3]))


def is_seymour(D: OrientedDigraph, u: int, mu) -> bool:
    """True iff d++(u) >= mu * d+(u), compared exactly."""
    if mu < 0:
        raise PreconditionError("mu must be nonnegative")
    stats = neighborhoods(D, u).stats
    return stats.d2 >= mu * stats.d1


def seymour_ratio(stats: VertexStats) -> Union[Fraction, float]:
    if stats.d1 == 0:
        return INFINITY
    return Fraction(stats.d2, stats.d1)


def best_seymour_ratio(D: OrientedDigraph) -> Tuple[int, Union[Fraction, float]]:
    """Vertex maximizing d++/d+ and that ratio (infinite when d+ = 0)."""
    if D.n < 1:
        raise PreconditionError("digraph has no vertices")
    best_vertex, best_ratio = 0, None
    for u in range(D.n):
        ratio = seymour_ratio(neighborhoods(D, u).stats)
        if best_ratio is None or ratio > best_ratio:
            best_vertex, best_ratio = u, ratio
    return best_vertex, best_ratio


def degree_minimizer(D: OrientedDigraph) -> int:
    if D.n < 1:
        raise PreconditionError("digraph has no vertices")
    return min(range(D.n), key=lambda v: (len(D.out_adj[v]), v))


def weighted_minimizer(D: OrientedDigraph, u: int, w) -> int:
    """v in N+(u) minimizing w*|N+(v) & N+(u)| + |N+(v) & N++(u)|."""
    if w < 1:
        raise PreconditionError("weight w must be at least 1")
    nbhd = neighborhoods(D, u)
    if not nbhd.first:
        raise EmptyNeighborhoodError(f"vertex {u} has no out-neighbors")
    best_vertex, best_score = None, None
    for v in sorted(nbhd.first):
        out = D.out_adj[v]
        score = w * sum(1 for y in out if y in nbhd.first) + sum(1 for y in out if y in nbhd.second)
        if best_score is None or score < best_score:
            best_vertex, best_score = v, score
    logger.debug("weighted minimizer of %d with w=%s: %d", u, w, best_vertex)
    return best_vertex


def partition_counts(D: OrientedDigraph, u: int, v: int) -> PartitionCounts:
    _check_vertex(D, u)
    _check_vertex(D, v)
    if not D.has_arc(u, v):
        raise PreconditionError(f"{v} is not an out-neighbor of {u}")
    from_u = positive_distances(D, u)
    from_v = positive_distances(D, v)
    cells: Dict[str, int] = {}
    for y in range(D.n):
        i = from_u[y]
        if i not in (1, 2, 3):
            continue
        j = from_v[y] if from_v[y] <= 3 else 4
        key = f"x{i}{j}"
        cells[key] = cells.get(key, 0) + 1
    counts = PartitionCounts(**cells)
    if counts.x31:
        raise PartitionError(f"{counts.x31} third-neighborhood vertices are out-neighbors of {v}")
    return counts


def edge_count(D: OrientedDigraph, A: Iterable[int], B: Iterable[int]) -> int:
    """Number of arcs with tail in A and head in B."""
    heads = set(B)
    return sum(1 for a in set(A) for y in D.out_adj[a] if y in heads)


def out_neighbors_of_set(D: OrientedDigraph, A: Iterable[int]) -> FrozenSet[int]:
    tails = set(A)
    return frozenset(y for a in tails for y in D.out_adj[a] if y not in tails)


def vertex_stats_frame(D: OrientedDigraph) -> pd.DataFrame:
    """Per-vertex d+, d++, d+++ and the ratio d++/d+ as a table."""
    records = []
    for u in range(D.n):
        stats = neighborhoods(D, u).stats
        ratio = seymour_ratio(stats)
        records.append({
            'vertex': u,
            'd1': stats.d1,
            'd2': stats.d2,
            'd3': stats.d3,
            'ratio': str(ratio) if ratio != INFINITY else 'inf',
            'ratio_float': float(ratio),
        })
    return pd.DataFrame.from_records(records, columns=['vertex', 'd1', 'd2', 'd3', 'ratio', 'ratio_float'])
