import random

import networkx as nx
import pytest

from kempe_edges.coloring import (
    EdgeColoring,
    MissingAssignment,
    apply_trace,
    choose_missing,
    is_missing,
    is_proper,
    kempe_component,
    verify_trace,
)
from kempe_edges.engine import random_coloring
from kempe_edges.factory import star_graph
from kempe_edges.fans import (
    COMET,
    CYCLE,
    PATH,
    FanError,
    build_fan,
    fan_digraph,
    is_saturated,
    shift_path_fan,
    shift_target,
)
from kempe_edges.graph import Graph, max_degree
from kempe_edges.oracle import enumerate_colorings

from support import clebsch_graph, random_missing, random_regular_bipartite, small_corpus

STAR = star_graph(3)
STAR_COL = EdgeColoring(4, [1, 2, 3])


def star_missing(last):
    # center 0 misses 4; leaves 1, 2, 3 sit on spokes colored 1, 2, 3
    return MissingAssignment((4, 2, 3, last))


def test_build_fan_kinds():
    f = build_fan(STAR, STAR_COL, star_missing(4), 0, 1)
    assert f.spokes == (0, 1, 2) and f.leaves == (1, 2, 3) and f.kind == PATH
    f = build_fan(STAR, STAR_COL, star_missing(1), 0, 1)
    assert f.kind == CYCLE and f.p == 2
    f = build_fan(STAR, STAR_COL, star_missing(2), 0, 1)
    assert f.kind == COMET and f.reentry == 1


def test_fan_digraph_examples():
    assert fan_digraph(STAR, STAR_COL, star_missing(4), 0) == {0: 1, 1: 2, 2: None}
    assert fan_digraph(STAR, STAR_COL, star_missing(1), 0) == {0: 1, 1: 2, 2: 0}
    leaf = fan_digraph(STAR, STAR_COL, star_missing(4), 1)
    assert leaf == {0: None}


def test_build_fan_rejects_non_edge_and_bad_missing():
    with pytest.raises(FanError):
        build_fan(STAR, STAR_COL, star_missing(4), 1, 2)
    with pytest.raises(Exception):
        build_fan(STAR, STAR_COL, MissingAssignment((1, 2, 3, 4)), 0, 1)


def test_shift_path_fan_on_star():
    m = star_missing(4)
    f = build_fan(STAR, STAR_COL, m, 0, 1)
    out, m2, tr = shift_path_fan(STAR, STAR_COL, m, f)
    assert out.colors == (2, 3, 4)
    assert m2[0] == 1
    assert len(tr) == 3
    assert verify_trace(STAR, STAR_COL, tr, out)
    assert verify_trace(STAR, STAR_COL, tr + tr.reversed(), STAR_COL)
    assert shift_target(STAR, STAR_COL, m, f)[0] == out


def test_shift_path_fan_single_spoke():
    g = Graph(2, [(0, 1)])
    col = EdgeColoring(3, [1])
    m = MissingAssignment((2, 3))
    f = build_fan(g, col, m, 0, 1)
    assert f.kind == PATH and f.p == 0
    out, _, tr = shift_path_fan(g, col, m, f)
    assert out.colors == (3,) and len(tr) == 1


def test_shift_target_cycle_on_star():
    m = star_missing(1)
    f = build_fan(STAR, STAR_COL, m, 0, 1)
    out, m2 = shift_target(STAR, STAR_COL, m, f)
    assert out.colors == (2, 3, 1)
    assert m2[0] == m[0]
    with pytest.raises(FanError):
        shift_target(STAR, STAR_COL, star_missing(2), build_fan(STAR, STAR_COL, star_missing(2), 0, 1))
    with pytest.raises(FanError):
        shift_path_fan(STAR, STAR_COL, m, f)


def _fan_instances(seed, count):
    rng = random.Random(seed)
    made = 0
    while made < count:
        if rng.random() < 0.5:
            g = random_regular_bipartite(rng, rng.randint(3, 4), rng.randint(4, 6))
        else:
            g = rng.choice(small_corpus(7)[60:])
        t = max_degree(g) + 1
        col = random_coloring(g, t, rng)
        m = random_missing(g, col, rng)
        e = rng.randrange(g.m)
        u, v = g.edges[e] if rng.random() < 0.5 else g.edges[e][::-1]
        yield g, col, m, u, v, build_fan(g, col, m, u, v)
        made += 1


def test_fan_chaining_invariant_and_uniqueness():
    for g, col, m, u, v, f in _fan_instances(1, 300):
        for i in range(f.p):
            assert m[f.leaves[i]] == col[f.spokes[i + 1]]
        last = m[f.leaves[-1]]
        if f.kind == PATH:
            assert is_missing(g, col, u, last)
        elif f.kind == CYCLE:
            assert last == col[f.spokes[0]]
        else:
            assert last == col[f.spokes[f.reentry]] and 1 <= f.reentry < f.p
        assert build_fan(g, col, m, u, v) == f


def test_shift_target_proper_and_keeps_other_classes():
    checked = 0
    for g, col, m, u, v, f in _fan_instances(2, 400):
        if f.kind == COMET:
            continue
        out, m2 = shift_target(g, col, m, f)
        assert is_proper(g, out)
        involved = {col[e] for e in f.spokes} | {m[x] for x in f.leaves} | {m[u]}
        for c in range(1, col.t + 1):
            if c not in involved:
                assert out.color_class(c) == col.color_class(c)
        if f.kind == PATH:
            res, m3, tr = shift_path_fan(g, col, m, f)
            assert res == out and m3 == m2
            assert verify_trace(g, col, tr, out)
            assert len(tr) == f.p + 1 and all(step.anchor == u for step in tr)
        checked += 1
    assert checked >= 200


def test_path_shift_swaps_are_single_edges():
    for g, col, m, u, v, f in _fan_instances(3, 300):
        if f.kind != PATH:
            continue
        _, _, tr = shift_path_fan(g, col, m, f)
        cur = col
        for step in tr:
            assert len(kempe_component(g, cur, step.c, step.d, step.anchor).edges) == 1
            cur = apply_trace(g, cur, [step])


def _saturated_by_networkx(g, col, m, f):
    u = f.center
    for i, e in enumerate(f.spokes):
        pair = {col[e], m[u]}
        H = nx.Graph()
        H.add_nodes_from(range(g.n))
        H.add_edges_from(g.edges[j] for j in range(g.m) if col[j] in pair)
        if f.leaves[i - 1] not in nx.node_connected_component(H, u):
            return False
    return True


def test_saturation_flag_agrees_with_direct_check():
    cycles = 0
    for g in small_corpus(5):
        if max_degree(g) > 3:
            continue
        for cols in enumerate_colorings(g, 4):
            col = EdgeColoring(4, cols)
            m = choose_missing(g, col)
            for e in range(g.m):
                for u, v in (g.edges[e], g.edges[e][::-1]):
                    f = build_fan(g, col, m, u, v)
                    if f.kind == CYCLE:
                        cycles += 1
                        assert is_saturated(g, col, m, f) == _saturated_by_networkx(g, col, m, f)
    assert cycles > 100


def test_saturation_on_clebsch_samples():
    rng = random.Random(11)
    g = clebsch_graph()
    seen = 0
    for _ in range(40):
        col = random_coloring(g, 6, rng)
        m = random_missing(g, col, rng)
        for e in range(g.m):
            for u, v in (g.edges[e], g.edges[e][::-1]):
                f = build_fan(g, col, m, u, v)
                if f.kind == CYCLE:
                    seen += 1
                    assert is_saturated(g, col, m, f) == _saturated_by_networkx(g, col, m, f)
    assert seen > 0
