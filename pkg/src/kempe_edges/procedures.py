"""Fan shifts and ugly/bad edge reductions, each realized as an explicit Kempe trace."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coloring import (
    ChainComponent,
    ColoringError,
    EdgeColoring,
    KempeTrace,
    MissingAssignment,
    bad_ugly,
    is_missing,
    kempe_component,
    kempe_swap,
)
from .fans import (
    CYCLE,
    PATH,
    Fan,
    build_fan,
    is_saturated,
    saturation_failures,
    shift_path_fan,
    shift_target,
    single_swap_cycle_shift,
)
from .graph import Graph

UGLY_DECREASED = "ugly-decreased"
BAD_DECREASED = "bad-decreased"
SHIFT_REALIZED = "shift-realized"


class ProcedureError(ColoringError):
    """A precondition of a recoloring procedure does not hold."""


class ClassViolation(ProcedureError):
    """A structural fact guaranteed for triangle-free or chordless graphs failed."""


@dataclass
class ReductionOutcome:
    coloring: EdgeColoring
    missing: Optional[MissingAssignment]
    trace: KempeTrace
    effect: str
    before: Optional[tuple[int, int]] = None
    after: Optional[tuple[int, int]] = None
    route: str = ""


def _touches(g: Graph, alpha: EdgeColoring, v: int, c: int, d: int) -> bool:
    return any(alpha[e] in (c, d) for e in g.incident(v))


def _component_or_none(g: Graph, alpha: EdgeColoring, c: int, d: int, v: int) -> Optional[ChainComponent]:
    return kempe_component(g, alpha, c, d, v) if _touches(g, alpha, v, c, d) else None


class _Recorder:
    """Accumulates swaps applied to a working coloring."""

    def __init__(self, g: Graph, alpha: EdgeColoring):
        self.g = g
        self.cur = alpha
        self.trace = KempeTrace()

    def swap(self, c: int, d: int, anchor: int) -> ChainComponent:
        comp = kempe_component(self.g, self.cur, c, d, anchor)
        self.cur, step = kempe_swap(self.g, self.cur, c, d, anchor)
        self.trace.append(step)
        return comp

    def path_shift(self, m: MissingAssignment, fan: Fan) -> MissingAssignment:
        self.cur, m2, tr = shift_path_fan(self.g, self.cur, m, fan)
        self.trace.extend(tr)
        return m2

    def absorb(self, outcome: ReductionOutcome) -> None:
        self.cur = outcome.coloring
        self.trace.extend(outcome.trace)


def _expect_fan(fan: Fan, kind: str, spokes: tuple[int, ...], what: str) -> None:
    if fan.kind != kind or fan.spokes != spokes:
        raise ProcedureError(f"{what}: expected {kind} fan {spokes}, got {fan.kind} {fan.spokes}")


def _finish_shift(g, alpha, m, fan, rec: _Recorder, what: str) -> ReductionOutcome:
    want, m2 = shift_target(g, alpha, m, fan)
    if rec.cur.colors != want.colors:
        raise ProcedureError(f"{what} did not reach the shifted coloring")
    return ReductionOutcome(rec.cur, m2, rec.trace, SHIFT_REALIZED, route=what)


def unsaturated_cycle_shift(g: Graph, alpha: EdgeColoring, m: MissingAssignment, fan: Fan) -> ReductionOutcome:
    """Shift a non-saturated cycle fan through Kempe changes.

    The fan is rotated so the chain of (color of the first spoke, m(u)) at u
    avoids the last leaf x_p. Swapping that chain's component at x_p frees
    m(u) there, the fan becomes a path and shifts spoke by spoke, and one more
    swap at x_p restores the component while fixing the last spoke.
    """
    if fan.kind != CYCLE:
        raise ProcedureError(f"expected a cycle fan, got {fan.kind}")
    fails = saturation_failures(g, alpha, m, fan)
    if not fails:
        raise ProcedureError("cycle fan is saturated")
    u = fan.center
    rot = fan.rotated(fails[0])
    a, b = alpha[rot.spokes[0]], m[u]
    xp = rot.leaves[-1]

    rec = _Recorder(g, alpha)
    if _touches(g, alpha, xp, a, b):
        comp = rec.swap(a, b, xp)
        if u in comp:
            raise ProcedureError("rotation failed: chain at the last leaf reaches the center")
    m1 = m.updated({xp: b})
    m1.check(g, rec.cur, [xp])
    fan1 = build_fan(g, rec.cur, m1, u, rot.leaves[0])
    _expect_fan(fan1, PATH, rot.spokes, "unsaturated shift")
    rec.path_shift(m1, fan1)
    comp = rec.swap(a, b, xp)
    if rot.spokes[-1] not in comp.edges:
        raise ProcedureError("closing chain does not contain the last spoke")
    return _finish_shift(g, alpha, m, fan, rec, "unsaturated cycle shift")


def saturated_cycle_shift(g: Graph, alpha: EdgeColoring, m: MissingAssignment,
                          fan_u: Fan, fan_v: Fan) -> ReductionOutcome:
    """Shift a saturated cycle fan X_u(v) using the cycle fan X_v(u) with q >= 2.

    Requires the leaves of the two fans to be disjoint, which holds in
    triangle-free and chordless graphs; a violation raises ClassViolation.
    """
    u, v = fan_u.center, fan_v.center
    if fan_u.kind != CYCLE or fan_v.kind != CYCLE:
        raise ProcedureError("both fans must be cycles")
    if fan_u.leaves[0] != v or fan_v.leaves[0] != u:
        raise ProcedureError("fans must start on the shared edge uv")
    if not is_saturated(g, alpha, m, fan_u):
        raise ProcedureError("fan at u is not saturated")
    p, q = fan_u.p, fan_v.p
    if p == 1:
        rec = _Recorder(g, alpha)
        rec.cur, step = single_swap_cycle_shift(g, alpha, fan_u)
        rec.trace.append(step)
        return _finish_shift(g, alpha, m, fan_u, rec, "two-spoke shift")
    if q < 2:
        raise ProcedureError(f"fan at v has q = {q} < 2")
    if m[u] == m[v]:
        raise ProcedureError("m(u) equals m(v)")

    xs, ys = fan_u.leaves[1:], fan_v.leaves[1:]
    shared = set(xs) & set(ys)
    if shared:
        raise ClassViolation(f"fan leaves meet at {sorted(shared)}; graph is neither triangle-free nor chordless here")
    uv = fan_u.spokes[0]
    a, b, c2 = alpha[uv], m[u], m[v]
    xp, y1, yq = xs[-1], ys[0], ys[-1]
    fan_edges = set(fan_u.spokes) | set(fan_v.spokes)
    guarded = {u, v, *xs, *ys[:-1]}

    path_p = kempe_component(g, alpha, a, b, u)
    if xp not in path_p or y1 not in path_p or yq in path_p:
        raise ProcedureError("saturated chain at u does not have the expected shape")

    rec = _Recorder(g, alpha)
    comp_c = _component_or_none(g, alpha, a, b, yq)
    if comp_c is not None:
        _guard(comp_c, fan_edges, guarded, yq, "C")
        rec.swap(a, b, yq)
    m1 = m.updated({yq: b})
    m1.check(g, rec.cur, [yq])
    fan_u1 = build_fan(g, rec.cur, m1, u, v)
    _expect_fan(fan_u1, CYCLE, fan_u.spokes, "after swapping C")

    if not is_saturated(g, rec.cur, m1, fan_u1):
        rec.absorb(unsaturated_cycle_shift(g, rec.cur, m1, fan_u1))
        if comp_c is not None:
            back = rec.swap(a, b, yq)
            if back.edges != comp_c.edges:
                raise ProcedureError("C changed before being swapped back")
        return _finish_shift(g, alpha, m, fan_u, rec, "saturated cycle shift (case 1)")

    comp_c2 = _component_or_none(g, rec.cur, b, c2, yq)
    if comp_c2 is not None:
        _guard(comp_c2, fan_edges, guarded, yq, "C'")
        rec.swap(b, c2, yq)
    m2 = m1.updated({yq: c2})
    m2.check(g, rec.cur, [yq])
    fan_v2 = build_fan(g, rec.cur, m2, v, u)
    _expect_fan(fan_v2, PATH, fan_v.spokes, "path fan at v")
    m3 = rec.path_shift(m2, fan_v2)
    if m3[u] != a or m3[v] != a:
        raise ProcedureError("shift at v left unexpected missing colors")
    fan_u3 = build_fan(g, rec.cur, m3, u, xs[0])
    _expect_fan(fan_u3, PATH, fan_u.spokes[1:], "path fan at u from x_1")
    m4 = rec.path_shift(m3, fan_u3)
    if rec.cur[uv] != b:
        raise ProcedureError("edge uv not recolored with m(u)")

    big = rec.swap(b, c2, yq)
    want = (comp_c2.edges if comp_c2 else frozenset()) | {uv, fan_v.spokes[-1]}
    if big.edges != want:
        raise ProcedureError("chain at y_q is not C' plus uv and v y_q")
    m5 = m4.updated({u: b})
    m5.check(g, rec.cur, [u])
    fan_v5 = build_fan(g, rec.cur, m5, v, y1)
    _expect_fan(fan_v5, CYCLE, (fan_v.spokes[1], fan_v.spokes[-1]) + tuple(reversed(fan_v.spokes[2:-1])),
                "reordered cycle fan at v")
    if is_saturated(g, rec.cur, m5, fan_v5):
        raise ProcedureError("reordered cycle fan at v is saturated")
    rec.absorb(unsaturated_cycle_shift(g, rec.cur, m5, fan_v5))
    if comp_c is not None:
        back = rec.swap(a, b, yq)
        if back.edges != comp_c.edges:
            raise ProcedureError("C changed before being swapped back")
    return _finish_shift(g, alpha, m, fan_u, rec, "saturated cycle shift (case 2)")


def _guard(comp: ChainComponent, fan_edges: set, guarded: set, start: int, name: str) -> None:
    if comp.edges & fan_edges:
        raise ProcedureError(f"component {name} uses a fan edge")
    if (set(comp.endpoints) - {start}) & guarded:
        raise ProcedureError(f"component {name} ends at a fan vertex")


def cycle_shift(g: Graph, alpha: EdgeColoring, m: MissingAssignment, u: int, v: int) -> ReductionOutcome:
    """Realize the shift of the cycle fan X_u(v) by whichever procedure applies."""
    fan_u = build_fan(g, alpha, m, u, v)
    if fan_u.kind != CYCLE:
        raise ProcedureError(f"fan at {u} is a {fan_u.kind}, not a cycle")
    if fan_u.p == 1:
        rec = _Recorder(g, alpha)
        rec.cur, step = single_swap_cycle_shift(g, alpha, fan_u)
        rec.trace.append(step)
        return _finish_shift(g, alpha, m, fan_u, rec, "two-spoke shift")
    if not is_saturated(g, alpha, m, fan_u):
        return unsaturated_cycle_shift(g, alpha, m, fan_u)
    fan_v = build_fan(g, alpha, m, v, u)
    if fan_v.kind != CYCLE:
        raise ProcedureError(f"fan at {v} is a {fan_v.kind}, not a cycle")
    return saturated_cycle_shift(g, alpha, m, fan_u, fan_v)


def _class_one_check(alpha: EdgeColoring, out: EdgeColoring, removed: int) -> None:
    if out.color_class(1) != alpha.color_class(1) - {removed}:
        raise ProcedureError("color class 1 changed beyond losing the ugly edge")


def _counts(alpha, target):
    return None if target is None else bad_ugly(alpha, target)


def resolve_noncycle_ugly(g: Graph, alpha: EdgeColoring, m: MissingAssignment, target: Optional[frozenset],
                          ugly: int, u: int) -> ReductionOutcome:
    """Take color 1 off edge ``ugly`` when its fan at ``u`` is a path or a comet."""
    if alpha[ugly] != 1:
        raise ProcedureError(f"edge {ugly} is not colored 1")
    if target is not None and ugly in target:
        raise ProcedureError(f"edge {ugly} belongs to the target class")
    v = g.other(ugly, u)
    fan = build_fan(g, alpha, m, u, v)
    rec = _Recorder(g, alpha)
    if fan.kind == CYCLE:
        raise ProcedureError("fan is a cycle; use the cycle-shift machinery")
    if fan.kind == PATH:
        rec.path_shift(m, fan)
    else:
        q = fan.reentry
        xq, xq1 = fan.spokes[q], fan.leaves[q - 1]
        color_q = alpha[xq]
        comp = rec.swap(m[u], color_q, u)
        if xq not in comp.edges:
            raise ProcedureError("comet chain at u misses the reentry spoke")
        if xq1 not in comp:
            m1 = m.updated({u: color_q})
            fan1 = build_fan(g, rec.cur, m1, u, v)
            _expect_fan(fan1, PATH, fan.spokes[:q], "truncated comet")
        else:
            m1 = m.updated({u: m[fan.leaves[-1]], xq1: m[u]})
            fan1 = build_fan(g, rec.cur, m1, u, v)
            _expect_fan(fan1, PATH, fan.spokes, "comet turned path")
        rec.path_shift(m1, fan1)
    _class_one_check(alpha, rec.cur, ugly)
    return ReductionOutcome(rec.cur, None, rec.trace, UGLY_DECREASED,
                            _counts(alpha, target), _counts(rec.cur, target))


def resolve_chord_ugly(g: Graph, alpha: EdgeColoring, m: MissingAssignment, target: Optional[frozenset],
                       ugly: int, u: int) -> ReductionOutcome:
    """Ugly edge uv whose cycle fan at u ends at a neighbor x_p of v (chordless graphs).

    Swapping the (m(u), color of u x_p) chain at u frees that color at u, and
    the fan truncated before x_p becomes a path.
    """
    if alpha[ugly] != 1:
        raise ProcedureError(f"edge {ugly} is not colored 1")
    v = g.other(ugly, u)
    fan = build_fan(g, alpha, m, u, v)
    if fan.kind != CYCLE or fan.p < 1:
        raise ProcedureError("expected a cycle fan with at least two spokes")
    xp = fan.leaves[-1]
    if not g.has_edge(v, xp):
        raise ProcedureError(f"v = {v} is not adjacent to the last leaf {xp}")
    color_p = alpha[fan.spokes[-1]]
    comp = kempe_component(g, alpha, m[u], color_p, u)
    if fan.leaves[-2] in comp:
        raise ClassViolation(f"chain ({m[u]},{color_p}) at {u} reaches x_(p-1) = {fan.leaves[-2]}")
    rec = _Recorder(g, alpha)
    rec.swap(m[u], color_p, u)
    m1 = m.updated({u: color_p})
    fan1 = build_fan(g, rec.cur, m1, u, v)
    _expect_fan(fan1, PATH, fan.spokes[:-1], "truncated cycle")
    rec.path_shift(m1, fan1)
    _class_one_check(alpha, rec.cur, ugly)
    return ReductionOutcome(rec.cur, None, rec.trace, UGLY_DECREASED,
                            _counts(alpha, target), _counts(rec.cur, target))


def recolor_isolated_bad(g: Graph, alpha: EdgeColoring, target: Optional[frozenset], bad: int) -> ReductionOutcome:
    x, y = g.edges[bad]
    if alpha[bad] == 1:
        raise ProcedureError(f"edge {bad} is already colored 1")
    if not (is_missing(g, alpha, x, 1) and is_missing(g, alpha, y, 1)):
        raise ProcedureError(f"color 1 is present at an endpoint of edge {bad}")
    out, step = kempe_swap(g, alpha, alpha[bad], 1, x)
    return ReductionOutcome(out, None, KempeTrace([step]), BAD_DECREASED,
                            _counts(alpha, target), _counts(out, target))
