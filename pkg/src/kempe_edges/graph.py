"""Simple undirected graphs and recognizers for triangle-free / chordless graphs."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edges are identified by their position in ``edges``; every coloring and
    trace in the package keys on these indices.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    _incident: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _lookup: dict = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        norm = []
        lookup = {}
        incident: list[list[int]] = [[] for _ in range(n)]
        for i, e in enumerate(edges):
            if len(e) != 2:
                raise GraphError(f"edge {i} is not a vertex pair: {e!r}")
            a, b = int(e[0]), int(e[1])
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge {i} = ({a}, {b}) has an endpoint outside 0..{n - 1}")
            if a == b:
                raise GraphError(f"edge {i} is a loop at vertex {a}")
            key = (min(a, b), max(a, b))
            if key in lookup:
                raise GraphError(f"edge {i} duplicates edge {lookup[key]} ({a}, {b})")
            lookup[key] = i
            norm.append(key)
            incident[a].append(i)
            incident[b].append(i)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "_incident", tuple(tuple(x) for x in incident))
        object.__setattr__(self, "_lookup", lookup)

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self._incident[v]]

    def edge_index(self, a: int, b: int) -> Optional[int]:
        return self._lookup.get((min(a, b), max(a, b)))

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self._lookup

    def remove_edges(self, drop: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(subgraph, kept)`` where ``kept[j]`` is the parent index of edge ``j``."""
        drop = set(drop)
        kept = [i for i in range(self.m) if i not in drop]
        return Graph(self.n, [self.edges[i] for i in kept]), kept

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            return cls(int(data["n"]), data["edges"])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc


@dataclass(frozen=True)
class ChordWitness:
    cycle: tuple[int, ...]
    chord: int


def max_degree(g: Graph) -> int:
    return max((g.degree(v) for v in range(g.n)), default=0)


def is_triangle_free(g: Graph) -> bool:
    return find_triangle(g) is None


def find_triangle(g: Graph) -> Optional[tuple[int, int, int]]:
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    for a, b in g.edges:
        common = nbrs[a] & nbrs[b]
        if common:
            return (a, b, min(common))
    return None


def count_triangles(g: Graph) -> int:
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    return sum(len(nbrs[a] & nbrs[b]) for a, b in g.edges) // 3


def _two_disjoint_paths(g: Graph, s: int, t: int, skip: int) -> Optional[tuple[list[int], list[int]]]:
    """Two internally vertex-disjoint s-t paths avoiding edge ``skip``, or None.

    Unit vertex capacities via splitting: vertex x becomes (x, 0) -> (x, 1).
    """
    cap: dict = {}
    adj: dict = {}

    def arc(a, b):
        cap[(a, b)] = cap.get((a, b), 0) + 1
        cap.setdefault((b, a), 0)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    for x in range(g.n):
        if x != s and x != t:
            arc((x, 0), (x, 1))
    for e, (a, b) in enumerate(g.edges):
        if e == skip:
            continue
        arc((a, 1), (b, 0))
        arc((b, 1), (a, 0))
    source, sink = (s, 1), (t, 0)
    if source not in adj or sink not in adj:
        return None

    for _ in range(2):
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return None
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a

    # arcs carrying flow: original arcs whose reverse gained capacity
    carrying = {}
    for (a, b), c in cap.items():
        if a[1] == 1 and b[1] == 0 and cap[(b, a)] > 0 and c == 0:
            carrying.setdefault(a, []).append(b)
    paths = []
    for _ in range(2):
        path = [s]
        node = source
        while node != sink:
            nxt = carrying[node].pop()
            path.append(nxt[0])
            node = (nxt[0], 1) if nxt != sink else sink
        paths.append(path)
    return paths[0], paths[1]


def chord_witness(g: Graph) -> Optional[ChordWitness]:
    """A cycle together with one of its chords, or None when ``g`` is chordless.

    Edge uv is a chord of some cycle exactly when ``g - uv`` still has two
    internally disjoint u-v paths.
    """
    for e, (u, v) in enumerate(g.edges):
        found = _two_disjoint_paths(g, u, v, e)
        if found is None:
            continue
        p1, p2 = found
        cycle = tuple(p1[:-1]) + tuple(reversed(p2[1:]))
        return ChordWitness(cycle=cycle, chord=e)
    return None


def is_chordless(g: Graph) -> bool:
    return chord_witness(g) is None


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if dist[y] == math.inf:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def diameter(g: Graph) -> float:
    """Largest shortest-path distance; ``math.inf`` if ``g`` is disconnected."""
    best = 0
    for v in range(g.n):
        d = max(bfs_distances(g, v), default=0)
        if d == math.inf:
            return math.inf
        best = max(best, d)
    return best


def diametral_pair(g: Graph) -> tuple[int, int]:
    """Smallest-index pair realizing the diameter (``g`` connected, n >= 1)."""
    best, pair = -1, (0, 0)
    for v in range(g.n):
        dist = bfs_distances(g, v)
        for w in range(v + 1, g.n):
            if dist[w] > best:
                best, pair = dist[w], (v, w)
    return pair


def is_connected(g: Graph) -> bool:
    return g.n == 0 or all(d < math.inf for d in bfs_distances(g, 0))


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def in_class(g: Graph) -> bool:
    """True when ``g`` is triangle-free or chordless."""
    return is_triangle_free(g) or is_chordless(g)
