"""Graph constructions: doubling, the triangle-rich chordless family, test corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import (
    Graph,
    GraphError,
    diameter,
    diametral_pair,
    is_chordless,
    is_tree,
    is_triangle_free,
    max_degree,
)


@dataclass(frozen=True)
class DoublingMap:
    """Two copies of a graph joined by one bridge between the copies of ``u``.

    Copy 1 keeps vertex and edge indices; copy 2 shifts vertices by ``n`` and
    edges by ``m``; the bridge is the last edge.
    """

    H: Graph
    base: Graph
    u: int
    bridge: int

    def vertex(self, v: int, copy: int) -> int:
        return v if copy == 1 else v + self.base.n

    def edge(self, e: int, copy: int) -> int:
        return e if copy == 1 else e + self.base.m

    def in_copy1(self, e: int) -> bool:
        return e < self.base.m


def double_graph(g: Graph, u: int) -> DoublingMap:
    if g.degree(u) != max_degree(g):
        raise GraphError(f"vertex {u} has degree {g.degree(u)}, not the maximum {max_degree(g)}")
    n = g.n
    edges = list(g.edges) + [(a + n, b + n) for a, b in g.edges] + [(u, u + n)]
    return DoublingMap(Graph(2 * n, edges), g, u, 2 * g.m)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def theta_graph(arms: list[int]) -> Graph:
    """Hubs 0 and 1 joined by internally disjoint paths with the given edge counts."""
    if len(arms) < 2 or min(arms) < 1 or sorted(arms)[:2] == [1, 1]:
        raise GraphError(f"infeasible theta arms {arms}")
    edges = []
    n = 2
    for length in arms:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return Graph(n, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_tree(n: int, rng: random.Random) -> Graph:
    return Graph(n, [(rng.randrange(i), i) for i in range(1, n)])


def random_triangle_free(n: int, m: int, rng: random.Random) -> Graph:
    """Add random vertex pairs in shuffled order, skipping any that close a triangle."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rng.shuffle(pairs)
    nbrs = [set() for _ in range(n)]
    edges = []
    for a, b in pairs:
        if len(edges) >= m:
            break
        if nbrs[a] & nbrs[b]:
            continue
        nbrs[a].add(b)
        nbrs[b].add(a)
        edges.append((a, b))
    return Graph(n, edges)


def random_chordless(n: int, rng: random.Random, max_block: int = 7) -> Graph:
    """Glue bridges, cycles and thetas at single vertices until ``n`` vertices exist.

    Every block is minimally 2-connected (or a bridge), so the result is chordless.
    """
    edges: list[tuple[int, int]] = []
    size = 1
    while size < n:
        root = rng.randrange(size)
        room = n - size
        kind = rng.choice(["bridge", "cycle", "cycle", "theta"])
        if kind == "bridge" or room < 2:
            edges.append((root, size))
            size += 1
            continue
        if kind == "cycle" or room < 4:
            k = rng.randint(2, min(room, max_block - 1))
            ring = [root] + list(range(size, size + k))
            edges += [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
            size += k
            continue
        # theta: second hub plus three arms of length >= 2
        budget = min(room, max_block)
        hub = size
        size += 1
        inner = [1, 1, 1]
        for _ in range(budget - 4):
            inner[rng.randrange(3)] += 1
        for count in inner:
            prev = root
            for _ in range(count):
                edges.append((prev, size))
                prev = size
                size += 1
            edges.append((prev, hub))
    return Graph(n, edges)


CORPUS_KINDS = ("path", "cycle", "tree", "theta", "random-triangle-free", "random-chordless", "star")


def corpus(kind: str, params: dict, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    if kind == "path":
        g = path_graph(params["n"])
    elif kind == "cycle":
        g = cycle_graph(params["n"])
    elif kind == "star":
        g = star_graph(params["leaves"])
    elif kind == "tree":
        g = random_tree(params["n"], rng)
    elif kind == "theta":
        g = theta_graph(list(params["arms"]))
    elif kind == "random-triangle-free":
        g = random_triangle_free(params["n"], params.get("m", 2 * params["n"]), rng)
    elif kind == "random-chordless":
        g = random_chordless(params["n"], rng, params.get("max_block", 7))
    else:
        raise GraphError(f"unknown corpus kind {kind!r}")
    if kind == "random-triangle-free":
        ok = is_triangle_free(g)
    elif kind == "random-chordless":
        ok = is_chordless(g)
    else:
        ok = is_triangle_free(g) or is_chordless(g)
    if not ok:
        raise GraphError(f"{kind} instance with {params} failed certification")
    return g


def prop31_generate(k: int, tree: Graph, pair: tuple[int, int] | None = None) -> Graph:
    """Chordless graph with at least 3^k triangles and diameter above 2^k d.

    Start from a tree of diameter d, hang a triangle on one end of a diametral
    pair, then k times take three copies and join the copies of a diametral
    vertex by a triangle.
    """
    if k < 0:
        raise GraphError("k must be nonnegative")
    if not is_tree(tree) or tree.n < 2:
        raise GraphError("input must be a tree with at least one edge")
    x, _ = pair if pair is not None else diametral_pair(tree)
    n = tree.n
    h = Graph(n + 2, list(tree.edges) + [(x, n), (n, n + 1), (n + 1, x)])
    for _ in range(k):
        u, _ = diametral_pair(h)
        n = h.n
        edges = [(a + i * n, b + i * n) for i in range(3) for a, b in h.edges]
        edges += [(u, u + n), (u + n, u + 2 * n), (u + 2 * n, u)]
        h = Graph(3 * n, edges)
    return h


def prop31_tree(d: int) -> Graph:
    """A path with ``d`` edges, the simplest tree of diameter ``d``."""
    if d < 1:
        raise GraphError("diameter must be at least 1")
    return path_graph(d + 1)


def prop31_bounds_hold(h: Graph, k: int, d: int) -> bool:
    from .graph import count_triangles

    return is_chordless(h) and count_triangles(h) >= 3 ** k and diameter(h) > 2 ** k * d
