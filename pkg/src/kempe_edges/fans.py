"""Vizing-style fans at a vertex and the shift that rotates spoke colors onto leaves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coloring import (
    ColoringError,
    EdgeColoring,
    KempeStep,
    KempeTrace,
    MissingAssignment,
    edge_of_color,
    kempe_component,
    kempe_swap,
)
from .graph import Graph

PATH = "path"
CYCLE = "cycle"
COMET = "comet"


class FanError(ColoringError):
    pass


@dataclass(frozen=True)
class Fan:
    """Spokes ``u x_0, ..., u x_p`` with ``m(x_i)`` equal to the color of the next spoke.

    ``kind`` records how the chain stops: the last leaf's missing color is
    missing at ``u`` (path), is the color of the first spoke (cycle), or is
    the color of spoke ``reentry`` with ``1 <= reentry < p`` (comet).
    """

    center: int
    spokes: tuple[int, ...]
    leaves: tuple[int, ...]
    kind: str
    reentry: Optional[int]
    missing: MissingAssignment

    @property
    def p(self) -> int:
        return len(self.spokes) - 1

    def rotated(self, i: int) -> "Fan":
        if self.kind != CYCLE:
            raise FanError("only cycle fans can be rotated")
        return Fan(self.center, self.spokes[i:] + self.spokes[:i], self.leaves[i:] + self.leaves[:i],
                   CYCLE, None, self.missing)


def build_fan(g: Graph, alpha: EdgeColoring, m: MissingAssignment, u: int, v: int) -> Fan:
    e0 = g.edge_index(u, v)
    if e0 is None:
        raise FanError(f"({u}, {v}) is not an edge")
    m.check(g, alpha, [u, v])
    spokes, leaves = [e0], [v]
    position = {e0: 0}
    while True:
        x = leaves[-1]
        m.check(g, alpha, [x])
        nxt = edge_of_color(g, alpha, u, m[x])
        if nxt is None:
            return Fan(u, tuple(spokes), tuple(leaves), PATH, None, m)
        if nxt in position:
            q = position[nxt]
            kind = CYCLE if q == 0 else COMET
            return Fan(u, tuple(spokes), tuple(leaves), kind, None if q == 0 else q, m)
        position[nxt] = len(spokes)
        spokes.append(nxt)
        leaves.append(g.other(nxt, u))


def fan_digraph(g: Graph, alpha: EdgeColoring, m: MissingAssignment, u: int) -> dict[int, Optional[int]]:
    """Arcs of the fan digraph at ``u``: spoke uw points to the spoke colored m(w)."""
    return {e: edge_of_color(g, alpha, u, m[g.other(e, u)]) for e in g.incident(u)}


def shift_target(g: Graph, alpha: EdgeColoring, m: MissingAssignment, fan: Fan) -> tuple[EdgeColoring, MissingAssignment]:
    """Recolor every spoke with its leaf's missing color; no Kempe changes involved."""
    if fan.kind not in (PATH, CYCLE):
        raise FanError(f"cannot shift a {fan.kind} fan")
    changes = {e: m[x] for e, x in zip(fan.spokes, fan.leaves)}
    upd = {x: alpha[e] for e, x in zip(fan.spokes, fan.leaves)}
    upd[fan.center] = alpha[fan.spokes[0]] if fan.kind == PATH else m[fan.center]
    return alpha.recolored(changes), m.updated(upd)


def shift_path_fan(g: Graph, alpha: EdgeColoring, m: MissingAssignment,
                   fan: Fan) -> tuple[EdgeColoring, MissingAssignment, KempeTrace]:
    """Shift a path fan as ``p + 1`` single-edge Kempe changes, last spoke first."""
    if fan.kind != PATH:
        raise FanError(f"expected a path fan, got {fan.kind}")
    u = fan.center
    cur = alpha
    trace = KempeTrace()
    for e, x in reversed(list(zip(fan.spokes, fan.leaves))):
        new = m[x]
        comp = kempe_component(g, cur, cur[e], new, u)
        if comp.edges != {e}:
            raise FanError(f"recoloring spoke {e} with {new} is not a single-edge Kempe change")
        cur, step = kempe_swap(g, cur, cur[e], new, u)
        trace.append(step)
    _, m2 = shift_target(g, alpha, m, fan)
    return cur, m2, trace


def saturation_failures(g: Graph, alpha: EdgeColoring, m: MissingAssignment, fan: Fan) -> list[int]:
    """Indices i where the (color of spoke i, m(u)) chain at u misses the previous leaf."""
    if fan.kind != CYCLE:
        raise FanError("saturation is defined for cycle fans only")
    u = fan.center
    out = []
    for i, e in enumerate(fan.spokes):
        comp = kempe_component(g, alpha, alpha[e], m[u], u)
        if fan.leaves[i - 1] not in comp:
            out.append(i)
    return out


def is_saturated(g: Graph, alpha: EdgeColoring, m: MissingAssignment, fan: Fan) -> bool:
    return not saturation_failures(g, alpha, m, fan)


def single_swap_cycle_shift(g: Graph, alpha: EdgeColoring, fan: Fan) -> tuple[EdgeColoring, KempeStep]:
    """A two-spoke cycle fan shifts by swapping its path ``x_0 - u - x_1``."""
    if fan.kind != CYCLE or fan.p != 1:
        raise FanError("single-swap shift needs a cycle fan with two spokes")
    a, b = alpha[fan.spokes[0]], alpha[fan.spokes[1]]
    comp = kempe_component(g, alpha, a, b, fan.center)
    if comp.edges != set(fan.spokes):
        raise FanError("two-spoke cycle fan is not an isolated bicolored path")
    return kempe_swap(g, alpha, a, b, fan.center)
