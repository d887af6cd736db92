"""Acceptance suite: one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
The lines are also repeated in the pytest terminal summary.
"""

from __future__ import annotations

import random
import time
from collections import Counter

import pytest

import kempe_edges.engine as engine
from kempe_edges.coloring import EdgeColoring, apply_trace, verify_trace
from kempe_edges.engine import (
    AlignmentState,
    align_first_class,
    class2_transform,
    find_delta_coloring,
    transform,
)
from kempe_edges.factory import corpus, cycle_graph, prop31_generate, prop31_tree
from kempe_edges.fans import CYCLE, build_fan, is_saturated, shift_target
from kempe_edges.graph import count_triangles, diameter, is_chordless, is_triangle_free, max_degree
from kempe_edges.oracle import OracleCapExceeded, coloring_space, oracle_equivalent
from kempe_edges.procedures import ProcedureError, cycle_shift, saturated_cycle_shift
from kempe_edges.graph import Graph
from kempe_edges.coloring import MissingAssignment

from support import (
    class_one_corpus,
    clebsch_graph,
    coloring_pair,
    load_fixture,
    random_missing,
    random_regular_bipartite,
)

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {number} {title}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _descending(log) -> bool:
    counts = [c for label, c in log if label != "skipped"]
    return all(b < a for a, b in zip(counts, counts[1:]))


# 1 ------------------------------------------------------------------------


def test_criterion_1_class_one_small_graphs():
    rng = random.Random(101)
    graphs = class_one_corpus(7)
    bad_oracle, bad_traces, pairs = [], 0, 0
    for g, gamma in graphs:
        t = max_degree(g) + 1
        space = coloring_space(g, t, quotient=True)
        if space.class_count != 1:
            bad_oracle.append(g.edges)
        for _ in range(20):
            a, b = coloring_pair(g, rng)
            tr = transform(g, a, b, gamma=gamma)
            pairs += 1
            if not verify_trace(g, a, tr, b):
                bad_traces += 1
    ok = not bad_oracle and bad_traces == 0 and len(graphs) > 100
    record(1, "Delta+1 colorings of small Class 1 graphs form one Kempe class", ok,
           f"{len(graphs)} graphs, oracle multi-class {len(bad_oracle)}, {pairs} pairs, trace failures {bad_traces}")


# 2 ------------------------------------------------------------------------


def _class_two_triangle_free(rng, count):
    seen, out = set(), []
    seed = 0
    while len(out) < count:
        n = rng.randint(5, 8)
        g = corpus("random-triangle-free", {"n": n, "m": rng.randint(n, 2 * n)}, seed=seed)
        seed += 1
        if g.m and g.edges not in seen and not find_delta_coloring(g).found:
            seen.add(g.edges)
            out.append(g)
    return out


def test_criterion_2_class_two_via_doubling():
    rng = random.Random(202)
    graphs = [cycle_graph(3), cycle_graph(5), cycle_graph(7)] + _class_two_triangle_free(rng, 10)
    failures, pairs = 0, 0
    for g in graphs:
        for _ in range(5):
            a, b = coloring_pair(g, rng, t=max_degree(g) + 2)
            pairs += 1
            if not verify_trace(g, a, class2_transform(g, a, b), b):
                failures += 1
    classes = {name: coloring_space(cycle_graph(n), 4).class_count for name, n in (("C3", 3), ("C5", 5))}
    ok = failures == 0 and all(c == 1 for c in classes.values()) and all(is_triangle_free(g) for g in graphs[1:])
    record(2, "chi'+1 colorings of Class 2 graphs connect through the doubled graph", ok,
           f"{len(graphs)} graphs, {pairs} pairs, failures {failures}, oracle classes {classes}")


# 3 ------------------------------------------------------------------------


def test_criterion_3_chordless_delta_at_least_three():
    rng = random.Random(303)
    graphs, seed = [], 0
    while len(graphs) < 50:
        g = corpus("random-chordless", {"n": rng.randint(6, 12)}, seed=seed)
        seed += 1
        if max_degree(g) >= 3 and is_chordless(g):
            graphs.append(g)
    no_coloring, failures, pairs = 0, 0, 0
    for g in graphs:
        res = find_delta_coloring(g)
        if not res.found:
            no_coloring += 1
            continue
        for _ in range(5):
            a, b = coloring_pair(g, rng)
            pairs += 1
            if not verify_trace(g, a, transform(g, a, b, gamma=res.coloring), b):
                failures += 1
    record(3, "chordless graphs with Delta >= 3 are Class 1 and Kempe-connected", no_coloring == 0 and failures == 0,
           f"50 graphs, missing Delta-colorings {no_coloring}, {pairs} pairs, failures {failures}")


# 4 ------------------------------------------------------------------------


def test_criterion_4_triangle_rich_family():
    rows, ok = [], True
    for k in (0, 1, 2):
        for d in (1, 2):
            h = prop31_generate(k, prop31_tree(d))
            tri, diam, chordless = count_triangles(h), diameter(h), is_chordless(h)
            good = chordless and tri >= 3 ** k and diam > 2 ** k * d
            ok &= good
            rows.append(f"k={k} d={d}: triangles {tri}>={3 ** k}, diameter {diam}>{2 ** k * d}")
    record(4, "triangle-rich chordless family meets its bounds", ok, "; ".join(rows))


# 5 ------------------------------------------------------------------------


def _check_shift(g, col, m, u, v, fan, out, tally, key):
    want, _ = shift_target(g, col, m, fan)
    try:
        replay = apply_trace(g, col, out.trace, check=True)
    except Exception:
        replay = None
    good = out.coloring == want and replay == want and verify_trace(g, col, out.trace, want)
    tally[key if good else key + " MISMATCH"] += 1


def test_criterion_5_cycle_shift_equals_definition():
    rng = random.Random(505)
    tally = Counter()
    sources = ["bipartite", "bipartite", "triangle-free", "chordless", "clebsch"]
    rounds = 0
    while tally["unsaturated"] < 600 and rounds < 5000:
        rounds += 1
        kind = sources[rounds % len(sources)]
        if kind == "bipartite":
            g = random_regular_bipartite(rng, rng.randint(3, 5), rng.randint(5, 8))
        elif kind == "triangle-free":
            n = rng.randint(6, 12)
            g = corpus("random-triangle-free", {"n": n, "m": rng.randint(n, 3 * n)}, seed=rng.randrange(10**9))
        elif kind == "chordless":
            g = corpus("random-chordless", {"n": rng.randint(6, 14)}, seed=rng.randrange(10**9))
        else:
            g = clebsch_graph()
        if max_degree(g) < 2:
            continue
        col = engine.random_coloring(g, max_degree(g) + 1, rng)
        m = random_missing(g, col, rng)
        for e in range(g.m):
            for u, v in (g.edges[e], g.edges[e][::-1]):
                fan = build_fan(g, col, m, u, v)
                if fan.kind != CYCLE or fan.p < 2:
                    continue
                if not is_saturated(g, col, m, fan):
                    _check_shift(g, col, m, u, v, fan, cycle_shift(g, col, m, u, v), tally, "unsaturated")
                    continue
                partner = build_fan(g, col, m, v, u)
                if partner.kind != CYCLE or partner.p < 2 or m[u] == m[v]:
                    tally["saturated, preconditions unmet"] += 1
                    continue
                try:
                    out = saturated_cycle_shift(g, col, m, fan, partner)
                except ProcedureError:
                    tally["saturated ERROR"] += 1
                    continue
                _check_shift(g, col, m, u, v, fan, out, tally, "saturated")
    for name, fx in load_fixture("saturated_fans.json").items():
        g = Graph.from_json(fx["graph"])
        col = EdgeColoring.from_json(fx["coloring"])
        m = MissingAssignment(tuple(fx["missing"]))
        u, v = fx["u"], fx["v"]
        fan, partner = build_fan(g, col, m, u, v), build_fan(g, col, m, v, u)
        _check_shift(g, col, m, u, v, fan, saturated_cycle_shift(g, col, m, fan, partner), tally,
                     "saturated")
    bad = sum(n for k, n in tally.items() if "MISMATCH" in k or "ERROR" in k)
    total = tally["unsaturated"] + tally["saturated"]
    ok = bad == 0 and total >= 500 and tally["saturated"] >= 2
    record(5, "cycle-fan shifts reproduce the defining recoloring", ok,
           f"{total} instances, {dict(sorted(tally.items()))}")


# 6 ------------------------------------------------------------------------


def test_criterion_6_descent_and_class_one_update(monkeypatch):
    calls = []
    original = engine.resolve_noncycle_ugly

    def watched(g, alpha, m, target, ugly, u):
        out = original(g, alpha, m, target, ugly, u)
        calls.append(out.coloring.color_class(1) == alpha.color_class(1) - {ugly}
                     and verify_trace(g, alpha, out.trace, out.coloring))
        return out

    monkeypatch.setattr(engine, "resolve_noncycle_ugly", watched)
    rng = random.Random(606)
    runs, reductions, broken = 0, 0, 0
    instances = [(g, gamma) for g, gamma in class_one_corpus(7)[::3]]
    seed = 0
    while len(instances) < 260:
        g = corpus("random-chordless", {"n": rng.randint(8, 20)}, seed=seed) if seed % 2 else \
            corpus("random-triangle-free", {"n": 10, "m": rng.randint(10, 25)}, seed=seed)
        seed += 1
        res = find_delta_coloring(g)
        if res.found and g.m:
            instances.append((g, res.coloring))
    for g, gamma in instances:
        beta, _ = coloring_pair(g, rng)
        state = AlignmentState(beta, gamma.color_class(1), (0, 0))
        out, tr = align_first_class(g, beta, gamma.color_class(1), state=state)
        runs += 1
        reductions += sum(1 for label, _ in state.log if label not in ("start", "skipped"))
        if not _descending(state.log) or out.color_class(1) != gamma.color_class(1) or not verify_trace(g, beta, tr, out):
            broken += 1
    eq1_fail = calls.count(False)
    ok = broken == 0 and eq1_fail == 0 and reductions >= 1000 and len(calls) > 0
    record(6, "descent is strictly monotone and non-cycle reductions drop exactly one edge from class 1", ok,
           f"{runs} runs, {reductions} reductions, non-monotone {broken}, "
           f"{len(calls)} non-cycle outcomes, class-1 mismatches {eq1_fail}")


# 7 ------------------------------------------------------------------------


def test_criterion_7_engine_matches_oracle():
    rng = random.Random(707)
    checked, disagree, skipped = 0, 0, 0
    cases = [(g, gamma, max_degree(g) + 1) for g, gamma in class_one_corpus(7)[::2]]
    cases += [(cycle_graph(3), None, 4), (cycle_graph(5), None, 4)]
    for g, gamma, t in cases:
        try:
            space = coloring_space(g, t, cap=100_000)
        except OracleCapExceeded:
            skipped += 1
            continue
        for _ in range(3):
            a, b = coloring_pair(g, rng, t=t)
            tr = transform(g, a, b, gamma=gamma) if gamma is not None else class2_transform(g, a, b)
            reached = apply_trace(g, a, tr, check=True) == b
            if len(space.colorings) <= 5_000:
                same, _ = oracle_equivalent(g, t, a, b)
            else:
                same = space.label_of(a) == space.label_of(b)
            checked += 1
            if not (reached and same):
                disagree += 1
    record(7, "oracle confirms every engine trace endpoint pair", disagree == 0 and checked >= 100,
           f"{checked} traces on enumerable instances, disagreements {disagree}, over cap {skipped}")


# 8 ------------------------------------------------------------------------


def test_criterion_8_performance():
    rng = random.Random(808)
    worst = 0.0
    for seed in range(3):
        g = corpus("random-chordless", {"n": 200}, seed=seed)
        a, b = coloring_pair(g, rng)
        start = time.perf_counter()
        tr = transform(g, a, b)
        worst = max(worst, time.perf_counter() - start)
        assert verify_trace(g, a, tr, b)
    record(8, "transform on a 200-vertex chordless graph finishes within 5 s", worst <= 5.0,
           f"slowest of 3 runs {worst:.2f} s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
