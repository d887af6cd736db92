"""Shared instance builders for the test suite."""

from __future__ import annotations

import functools
import json
import random
from pathlib import Path

import networkx as nx

from kempe_edges.coloring import EdgeColoring, MissingAssignment, missing_colors
from kempe_edges.engine import find_delta_coloring, random_coloring
from kempe_edges.graph import Graph, is_chordless, is_triangle_free, max_degree

FIXTURES = Path(__file__).parent / "fixtures"


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G)
    return Graph(G.number_of_nodes(), sorted(tuple(sorted(e)) for e in G.edges()))


def to_nx(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


@functools.lru_cache(maxsize=None)
def small_corpus(max_n: int = 7) -> tuple[Graph, ...]:
    """Connected graphs with 2..max_n vertices that are triangle-free or chordless (atlas order)."""
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n:
            break
        if G.number_of_nodes() < 2 or not nx.is_connected(G):
            continue
        g = from_nx(G)
        if is_triangle_free(g) or is_chordless(g):
            out.append(g)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def class_one_corpus(max_n: int = 7) -> tuple[tuple[Graph, EdgeColoring], ...]:
    out = []
    for g in small_corpus(max_n):
        res = find_delta_coloring(g)
        if res.found:
            out.append((g, res.coloring))
    return tuple(out)


def clebsch_graph() -> Graph:
    return Graph(16, [(i, j) for i in range(16) for j in range(i + 1, 16) if bin(i ^ j).count("1") in (1, 4)])


def random_regular_bipartite(rng: random.Random, k: int, h: int) -> Graph:
    """Union of k random perfect matchings between two sides of size h (simple edges only)."""
    edges = set()
    for _ in range(k):
        perm = list(range(h))
        rng.shuffle(perm)
        edges.update((i, h + perm[i]) for i in range(h))
    return Graph(2 * h, sorted(edges))


def coloring_pair(g: Graph, rng: random.Random, t: int | None = None) -> tuple[EdgeColoring, EdgeColoring]:
    t = max_degree(g) + 1 if t is None else t
    a, b = random_coloring(g, t, rng), random_coloring(g, t, rng)
    assert a is not None and b is not None
    return a, b


def random_missing(g: Graph, alpha: EdgeColoring, rng: random.Random) -> MissingAssignment:
    return MissingAssignment(tuple(rng.choice(sorted(missing_colors(g, alpha, v))) for v in range(g.n)))


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text())
