"""Transform one (Delta+1)-edge-coloring into another by Kempe changes.

The driver aligns both colorings with color class 1 of an optimal coloring
by a descent on the number of (bad, ugly) edges, removes that class, and
recurses on the remaining graph with one color fewer.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Optional

from .coloring import (
    ColoringError,
    EdgeColoring,
    KempeStep,
    KempeTrace,
    bad_ugly,
    choose_missing,
    edge_of_color,
    is_matching,
    is_missing,
    kempe_component,
    kempe_swap,
    require_proper,
    verify_trace,
)
from .fans import CYCLE, build_fan
from .factory import DoublingMap, double_graph
from .graph import Graph, is_chordless, is_triangle_free, max_degree
from .procedures import (
    ProcedureError,
    ReductionOutcome,
    cycle_shift,
    recolor_isolated_bad,
    resolve_chord_ugly,
    resolve_noncycle_ugly,
)

log = logging.getLogger(__name__)


class EngineError(ColoringError):
    pass


class PreconditionError(EngineError):
    pass


class DescentStall(EngineError):
    """No reduction applies although bad or ugly edges remain."""

    def __init__(self, message: str, coloring: EdgeColoring, counts: tuple[int, int]):
        super().__init__(f"{message}; (bad, ugly) = {counts}; colors = {list(coloring.colors)}")
        self.coloring = coloring
        self.counts = counts


# ---------------------------------------------------------------- solver


@dataclass(frozen=True)
class SolverResult:
    palette: int
    coloring: Optional[EdgeColoring]

    @property
    def found(self) -> bool:
        return self.coloring is not None


def find_coloring(g: Graph, t: int) -> Optional[EdgeColoring]:
    """Exact backtracking: edges in index order, colors ascending."""
    if g.m == 0:
        return EdgeColoring(max(t, 1), ())
    if t < max_degree(g):
        return None
    used = [0] * g.n
    colors = [0] * g.m
    full = (1 << t) - 1
    i = 0
    nxt = [1] * g.m
    while 0 <= i < g.m:
        a, b = g.edges[i]
        if colors[i]:
            bit = 1 << (colors[i] - 1)
            used[a] &= ~bit
            used[b] &= ~bit
            colors[i] = 0
        free = full & ~(used[a] | used[b])
        c = nxt[i]
        while c <= t and not (free >> (c - 1)) & 1:
            c += 1
        if c > t:
            nxt[i] = 1
            i -= 1
            continue
        colors[i] = c
        nxt[i] = c + 1
        bit = 1 << (c - 1)
        used[a] |= bit
        used[b] |= bit
        i += 1
    if i < 0:
        return None
    return EdgeColoring(t, colors)


def random_coloring(g: Graph, t: int, rng: random.Random, attempts: int = 200) -> Optional[EdgeColoring]:
    """A proper t-coloring from randomized backtracking (random edge and color order).

    Not uniform, but independent of Kempe structure. Gives up after ``attempts``
    restarts with a bounded search each.
    """
    for _ in range(attempts):
        order = list(range(g.m))
        rng.shuffle(order)
        perm = list(range(1, t + 1))
        rng.shuffle(perm)
        relabel = {i + 1: perm[i] for i in range(t)}
        sub = Graph(g.n, [g.edges[e] for e in order])
        found = _bounded_search(sub, t, 20 * g.m + 100)
        if found is not None:
            cols = [0] * g.m
            for j, e in enumerate(order):
                cols[e] = relabel[found[j]]
            return EdgeColoring(t, cols)
    return None


def _bounded_search(g: Graph, t: int, budget: int) -> Optional[list[int]]:
    used = [0] * g.n
    colors = [0] * g.m
    full = (1 << t) - 1
    nxt = [1] * g.m
    i = 0
    while 0 <= i < g.m:
        budget -= 1
        if budget < 0:
            return None
        a, b = g.edges[i]
        if colors[i]:
            bit = 1 << (colors[i] - 1)
            used[a] &= ~bit
            used[b] &= ~bit
            colors[i] = 0
        free = full & ~(used[a] | used[b])
        c = nxt[i]
        while c <= t and not (free >> (c - 1)) & 1:
            c += 1
        if c > t:
            nxt[i] = 1
            i -= 1
            continue
        colors[i] = c
        nxt[i] = c + 1
        bit = 1 << (c - 1)
        used[a] |= bit
        used[b] |= bit
        i += 1
    return colors if i == g.m else None


def find_delta_coloring(g: Graph) -> SolverResult:
    delta = max_degree(g)
    return SolverResult(delta, find_coloring(g, delta))


def chromatic_index(g: Graph) -> int:
    delta = max_degree(g)
    return delta if find_delta_coloring(g).found else delta + 1


# ---------------------------------------------------------------- descent


@dataclass
class AlignmentState:
    coloring: EdgeColoring
    target: frozenset
    counts: tuple[int, int]
    log: list = field(default_factory=list)


def _main_step(g: Graph, alpha: EdgeColoring, m, target: frozenset, w: int) -> Optional[ReductionOutcome]:
    """Free vertex w: make its target edge wv good by shifting at the ugly edge uv."""
    wv = next((e for e in g.incident(w) if e in target), None)
    if wv is None or alpha[wv] == 1:
        return None
    v = g.other(wv, w)
    uv = edge_of_color(g, alpha, v, 1)
    if uv is None:
        return None
    u = g.other(uv, v)

    fan_v = build_fan(g, alpha, m, v, u)
    if fan_v.kind == CYCLE and fan_v.leaves[-1] == w:
        # the shift at v itself lands color 1 on vw
        out = cycle_shift(g, alpha, m, v, u)
        if out.coloring[wv] == 1:
            return ReductionOutcome(out.coloring, None, out.trace, "bad-decreased")

    out = cycle_shift(g, alpha, m, u, v)
    cur = out.coloring
    if not (is_missing(g, cur, w, 1) and is_missing(g, cur, v, 1)):
        raise ProcedureError(f"color 1 is not missing at both {w} and {v} after the shift")
    cur, step = kempe_swap(g, cur, cur[wv], 1, w)
    return ReductionOutcome(cur, None, out.trace + KempeTrace([step]), "bad-decreased")


def _candidates(g: Graph, alpha: EdgeColoring, target: frozenset, chordless: bool):
    """Yield ``(label, thunk)`` reductions in priority order."""
    m = choose_missing(g, alpha)
    bad = [e for e in sorted(target) if alpha[e] != 1]
    ugly = [e for e in range(g.m) if alpha[e] == 1 and e not in target]

    for e in bad:
        x, y = g.edges[e]
        if is_missing(g, alpha, x, 1) and is_missing(g, alpha, y, 1):
            yield "isolated-bad", lambda e=e: recolor_isolated_bad(g, alpha, target, e)

    for e in ugly:
        for u in g.edges[e]:
            fan = build_fan(g, alpha, m, u, g.other(e, u))
            if fan.kind != CYCLE:
                yield "noncycle-ugly", lambda e=e, u=u: resolve_noncycle_ugly(g, alpha, m, target, e, u)

    if chordless:
        for e in ugly:
            for u in g.edges[e]:
                v = g.other(e, u)
                fan = build_fan(g, alpha, m, u, v)
                if fan.kind == CYCLE and fan.p >= 1 and g.has_edge(v, fan.leaves[-1]):
                    yield "chord-ugly", lambda e=e, u=u: resolve_chord_ugly(g, alpha, m, target, e, u)

    for w in range(g.n):
        if m[w] == 1:
            yield "main", lambda w=w: _main_step(g, alpha, m, target, w)


def align_first_class(g: Graph, beta: EdgeColoring, target, chordless: Optional[bool] = None,
                      state: Optional[AlignmentState] = None) -> tuple[EdgeColoring, KempeTrace]:
    """Kempe changes taking ``beta`` to a coloring whose class 1 equals ``target``.

    Every accepted step strictly decreases (bad, ugly) lexicographically.
    Pass an ``AlignmentState`` to collect the per-step log.
    """
    target = frozenset(target)
    if not is_matching(g, target):
        raise PreconditionError("target class is not a matching")
    if chordless is None:
        chordless = not is_triangle_free(g) and is_chordless(g)
    alpha = beta
    trace = KempeTrace()
    counts = bad_ugly(alpha, target)
    if state is None:
        state = AlignmentState(alpha, target, counts)
    state.log.append(("start", counts))
    watchdog = (g.m + 1) ** 2
    it = 0
    while counts != (0, 0):
        it += 1
        if it > watchdog:
            raise DescentStall("watchdog exceeded", alpha, counts)
        chosen = None
        errors = []
        for label, thunk in _candidates(g, alpha, target, chordless):
            try:
                out = thunk()
            except ProcedureError as exc:
                errors.append(f"{label}: {exc}")
                continue
            if out is None:
                continue
            after = bad_ugly(out.coloring, target)
            if after < counts:
                chosen = (label, out, after)
                break
            errors.append(f"{label}: no descent {counts} -> {after}")
        if chosen is None:
            raise DescentStall("no reduction applies (" + "; ".join(errors[:4]) + ")", alpha, counts)
        label, out, after = chosen
        if errors:
            state.log.append(("skipped", tuple(errors)))
        alpha = out.coloring
        trace.extend(out.trace)
        counts = after
        state.log.append((label, counts))
    state.coloring = alpha
    state.counts = counts
    return alpha, trace


# ---------------------------------------------------------------- transform


def _check_palette(g: Graph, beta: EdgeColoring, t: int, name: str) -> None:
    if len(beta) != g.m:
        raise PreconditionError(f"{name} has {len(beta)} colors for {g.m} edges")
    if beta.t != t:
        raise PreconditionError(f"{name} uses palette {beta.t}, expected {t}")
    try:
        require_proper(g, beta)
    except ColoringError as exc:
        raise PreconditionError(f"{name}: {exc}") from exc


def _transform(g: Graph, b1: EdgeColoring, b2: EdgeColoring, gamma: EdgeColoring,
               chordless: bool, stats: Optional[dict]) -> KempeTrace:
    delta = max_degree(g)
    if delta <= 1:
        trace = KempeTrace()
        cur = b1
        for e in range(g.m):
            if cur[e] != b2[e]:
                cur, step = kempe_swap(g, cur, cur[e], b2[e], g.edges[e][0])
                trace.append(step)
        return trace
    target = gamma.color_class(1)
    st1 = AlignmentState(b1, target, (0, 0))
    st2 = AlignmentState(b2, target, (0, 0))
    a1, tr1 = align_first_class(g, b1, target, chordless, st1)
    a2, tr2 = align_first_class(g, b2, target, chordless, st2)
    if stats is not None:
        stats.setdefault("descents", []).extend([st1.log, st2.log])
    sub, kept = g.remove_edges(target)
    down = {c: c - 1 for c in range(2, b1.t + 1)}
    s1 = EdgeColoring(b1.t - 1, (down[a1[e]] for e in kept))
    s2 = EdgeColoring(b1.t - 1, (down[a2[e]] for e in kept))
    sg = EdgeColoring(max(gamma.t - 1, 1), (gamma[e] - 1 for e in kept))
    inner = _transform(sub, s1, s2, sg, chordless, stats)
    lifted = KempeTrace(KempeStep(s.c + 1, s.d + 1, s.anchor) for s in inner)
    return tr1 + lifted + tr2.reversed()


def transform(g: Graph, beta1: EdgeColoring, beta2: EdgeColoring, gamma: Optional[EdgeColoring] = None,
              check_class: bool = True, stats: Optional[dict] = None) -> KempeTrace:
    """Kempe trace from ``beta1`` to ``beta2`` on a Class 1 graph that is triangle-free or chordless.

    ``gamma`` is an optimal (Delta-)coloring; found by exact search when omitted.
    """
    delta = max_degree(g)
    tri_free = is_triangle_free(g)
    chordless = is_chordless(g) if (check_class or not tri_free) else False
    if check_class and not (tri_free or chordless):
        raise PreconditionError("graph is neither triangle-free nor chordless")
    for name, b in (("from-coloring", beta1), ("to-coloring", beta2)):
        _check_palette(g, b, delta + 1, name)
    if g.m == 0:
        return KempeTrace()
    if gamma is None:
        res = find_delta_coloring(g)
        if not res.found:
            raise PreconditionError(f"graph is Class 2 (no {delta}-edge-coloring)")
        gamma = res.coloring
    else:
        _check_palette(g, gamma, delta, "optimal coloring")
    trace = _transform(g, beta1, beta2, gamma, chordless and not tri_free, stats)
    if not verify_trace(g, beta1, trace, beta2):
        raise EngineError("produced trace does not replay to the target coloring")
    return trace


# ---------------------------------------------------------------- class 2 via doubling


def _extend_to_double(dm: DoublingMap, beta: EdgeColoring, t: int) -> EdgeColoring:
    g = dm.base
    missing = sorted(set(range(1, t + 1)) - {beta[e] for e in g.incident(dm.u)})
    return EdgeColoring(t, list(beta.colors) + list(beta.colors) + [missing[0]])


def project_trace(dm: DoublingMap, start_h: EdgeColoring, trace_h: KempeTrace) -> KempeTrace:
    """Restrict a trace on the doubled graph to the first copy.

    A Kempe chain crosses the bridge at most once, so its part inside copy 1
    is a single maximal chain of copy 1 (or empty).
    """
    g = dm.base
    cur_h = start_h
    cur_g = EdgeColoring(start_h.t, start_h.colors[: g.m])
    out = KempeTrace()
    for i, step in enumerate(trace_h):
        comp = kempe_component(dm.H, cur_h, step.c, step.d, step.anchor)
        inside = sorted(e for e in comp.edges if dm.in_copy1(e))
        cur_h, _ = kempe_swap(dm.H, cur_h, step.c, step.d, step.anchor)
        if inside:
            anchor = min(g.edges[inside[0]])
            gcomp = kempe_component(g, cur_g, step.c, step.d, anchor)
            if gcomp.edges != set(inside):
                raise EngineError(f"projection diverged at step {i}: restricted chain is not maximal")
            cur_g, gstep = kempe_swap(g, cur_g, step.c, step.d, anchor)
            out.append(gstep)
        if cur_g.colors != cur_h.colors[: g.m]:
            raise EngineError(f"projection diverged at step {i}")
    return out


def class2_transform(g: Graph, beta1: EdgeColoring, beta2: EdgeColoring,
                     stats: Optional[dict] = None) -> KempeTrace:
    """Kempe trace between two (chi'+1)-colorings of a triangle-free or chordless graph."""
    if not (is_triangle_free(g) or is_chordless(g)):
        raise PreconditionError("graph is neither triangle-free nor chordless")
    delta = max_degree(g)
    if g.m == 0:
        return KempeTrace()
    res = find_delta_coloring(g)
    if res.found:
        return transform(g, beta1, beta2, gamma=res.coloring, stats=stats)
    t = delta + 2
    for name, b in (("from-coloring", beta1), ("to-coloring", beta2)):
        _check_palette(g, b, t, name)
    u = min(v for v in range(g.n) if g.degree(v) == delta)
    dm = double_graph(g, u)
    base = find_coloring(g, delta + 1)
    if base is None:
        raise EngineError(f"no {delta + 1}-edge-coloring found; contradicts Vizing's bound")
    gamma_h = _extend_to_double(dm, base, delta + 1)
    h1 = _extend_to_double(dm, beta1, t)
    h2 = _extend_to_double(dm, beta2, t)
    trace_h = transform(dm.H, h1, h2, gamma=gamma_h, stats=stats)
    trace = project_trace(dm, h1, trace_h)
    if not verify_trace(g, beta1, trace, beta2):
        raise EngineError("projected trace does not replay to the target coloring")
    return trace


def auto_transform(g: Graph, beta1: EdgeColoring, beta2: EdgeColoring, stats: Optional[dict] = None) -> KempeTrace:
    """Pick the Class 1 or Class 2 route from the palette and the solver outcome."""
    return class2_transform(g, beta1, beta2, stats=stats)
