"""Brute-force Kempe equivalence over the full space of proper edge colorings.

Only ``kempe_swap``-level machinery is shared with the engine; components are
recomputed here from scratch.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .coloring import ColoringError, EdgeColoring, KempeStep, KempeTrace
from .graph import Graph

DEFAULT_CAP = 5_000_000


class OracleCapExceeded(ColoringError):
    pass


def canonical(col: tuple[int, ...]) -> tuple[int, ...]:
    """Relabel colors in order of first appearance along the edge order."""
    names: dict[int, int] = {}
    return tuple(names.setdefault(c, len(names) + 1) for c in col)


def enumerate_colorings(g: Graph, t: int, cap: int = DEFAULT_CAP,
                        canonical_only: bool = False) -> list[tuple[int, ...]]:
    """All proper t-edge-colorings as color tuples, lexicographic in edge order.

    With ``canonical_only`` only colorings fixed by :func:`canonical` are
    listed, one per orbit of the palette permutations. Raises
    OracleCapExceeded once more than ``cap`` colorings are found.
    """
    m = g.m
    out: list[tuple[int, ...]] = []
    # earlier edges sharing an endpoint with edge i
    prior = [[j for j in range(i) if set(g.edges[i]) & set(g.edges[j])] for i in range(m)]
    cols = [0] * m

    def rec(i: int, top: int) -> None:
        if i == m:
            out.append(tuple(cols))
            if len(out) > cap:
                raise OracleCapExceeded(f"more than {cap} proper {t}-colorings")
            return
        taken = {cols[j] for j in prior[i]}
        limit = min(t, top + 1) if canonical_only else t
        for c in range(1, limit + 1):
            if c not in taken:
                cols[i] = c
                rec(i + 1, max(top, c))
        cols[i] = 0

    rec(0, 0)
    return out


def _components(g: Graph, col: tuple[int, ...], c: int, d: int) -> list[tuple[list[int], int]]:
    """Edge lists of the (c, d)-chains, each with its smallest vertex."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    sel = [e for e, k in enumerate(col) if k == c or k == d]
    for e in sel:
        a, b = g.edges[e]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for e in sel:
        groups.setdefault(find(g.edges[e][0]), []).append(e)
    return [(edges, root) for root, edges in groups.items()]


def kempe_neighbors(g: Graph, col: tuple[int, ...], t: int):
    """Yield ``(neighbor, step)`` for every single Kempe change from ``col``."""
    for c in range(1, t + 1):
        for d in range(c + 1, t + 1):
            for edges, root in _components(g, col, c, d):
                new = list(col)
                for e in edges:
                    new[e] = d if col[e] == c else c
                yield tuple(new), KempeStep(c, d, root)


@dataclass
class ColoringSpace:
    """Proper colorings with Kempe-class labels.

    When ``quotient`` is set, ``colorings`` holds one canonical representative
    per palette-permutation orbit. Swapping two colors everywhere is the
    composition of the Kempe changes on all their chains, so each orbit lies
    inside one class and class counts are unchanged.
    """

    graph: Graph
    t: int
    colorings: list[tuple[int, ...]]
    index: dict
    labels: list[int]
    quotient: bool = False

    @property
    def class_count(self) -> int:
        return len(set(self.labels))

    def class_sizes(self) -> list[int]:
        sizes: dict[int, int] = {}
        for lab in self.labels:
            sizes[lab] = sizes.get(lab, 0) + 1
        return sorted(sizes.values(), reverse=True)

    def label_of(self, alpha: EdgeColoring | tuple) -> int:
        key = alpha.colors if isinstance(alpha, EdgeColoring) else tuple(alpha)
        if self.quotient:
            key = canonical(key)
        return self.labels[self.index[key]]

    def partition(self) -> list[list[tuple[int, ...]]]:
        groups: dict[int, list] = {}
        for col, lab in zip(self.colorings, self.labels):
            groups.setdefault(lab, []).append(col)
        return list(groups.values())


def coloring_space(g: Graph, t: int, cap: int = DEFAULT_CAP, quotient: bool = False) -> ColoringSpace:
    cols = enumerate_colorings(g, t, cap, canonical_only=quotient)
    index = {c: i for i, c in enumerate(cols)}
    labels = [-1] * len(cols)
    label = 0
    for s in range(len(cols)):
        if labels[s] >= 0:
            continue
        labels[s] = label
        queue = deque([s])
        while queue:
            i = queue.popleft()
            for nb, _ in kempe_neighbors(g, cols[i], t):
                j = index[canonical(nb) if quotient else nb]
                if labels[j] < 0:
                    labels[j] = label
                    queue.append(j)
        label += 1
    return ColoringSpace(g, t, cols, index, labels, quotient)


def equivalence_classes(g: Graph, t: int, cap: int = DEFAULT_CAP) -> list[list[tuple[int, ...]]]:
    return coloring_space(g, t, cap).partition()


def oracle_equivalent(g: Graph, t: int, alpha: EdgeColoring, beta: EdgeColoring,
                      cap: int = DEFAULT_CAP) -> tuple[bool, Optional[KempeTrace]]:
    """BFS from ``alpha``; returns equivalence and a shortest trace when one exists."""
    start, goal = tuple(alpha.colors), tuple(beta.colors)
    if start == goal:
        return True, KempeTrace()
    parent = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nb, step in kempe_neighbors(g, cur, t):
            if nb in parent:
                continue
            parent[nb] = (cur, step)
            if len(parent) > cap:
                raise OracleCapExceeded(f"BFS visited more than {cap} colorings")
            if nb == goal:
                steps = []
                node = nb
                while parent[node] is not None:
                    node, st = parent[node]
                    steps.append(st)
                return True, KempeTrace(reversed(steps))
            queue.append(nb)
    return False, None
