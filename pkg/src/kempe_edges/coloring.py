"""Proper edge colorings, missing colors, Kempe chains and replayable traces."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional

from .graph import Graph


class ColoringError(ValueError):
    pass


class TraceError(ColoringError):
    """Replay failed; ``step`` is the index of the offending record."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


@dataclass(frozen=True)
class EdgeColoring:
    t: int
    colors: tuple[int, ...]

    def __init__(self, t: int, colors: Iterable[int]):
        colors = tuple(int(c) for c in colors)
        if t < 1:
            raise ColoringError(f"palette size must be positive, got {t}")
        for i, c in enumerate(colors):
            if not 1 <= c <= t:
                raise ColoringError(f"edge {i} has color {c} outside 1..{t}")
        object.__setattr__(self, "t", int(t))
        object.__setattr__(self, "colors", colors)

    def __getitem__(self, e: int) -> int:
        return self.colors[e]

    def __len__(self) -> int:
        return len(self.colors)

    def color_class(self, j: int) -> frozenset[int]:
        return frozenset(e for e, c in enumerate(self.colors) if c == j)

    def recolored(self, changes: dict[int, int]) -> "EdgeColoring":
        cols = list(self.colors)
        for e, c in changes.items():
            cols[e] = c
        return EdgeColoring(self.t, cols)

    def relabeled(self, mapping: dict[int, int], t: int) -> "EdgeColoring":
        return EdgeColoring(t, (mapping[c] for c in self.colors))

    def to_json(self) -> dict:
        return {"t": self.t, "colors": list(self.colors)}

    @classmethod
    def from_json(cls, data: dict) -> "EdgeColoring":
        try:
            return cls(int(data["t"]), data["colors"])
        except (KeyError, TypeError) as exc:
            raise ColoringError(f"malformed coloring JSON: {exc}") from exc


def _check_total(g: Graph, alpha: EdgeColoring) -> None:
    if len(alpha) != g.m:
        raise ColoringError(f"coloring has {len(alpha)} entries but graph has {g.m} edges")


def validate_proper(g: Graph, alpha: EdgeColoring) -> tuple[bool, list[tuple[int, int]]]:
    _check_total(g, alpha)
    violations = []
    for v in range(g.n):
        seen: dict[int, int] = {}
        for e in g.incident(v):
            c = alpha[e]
            if c in seen:
                violations.append((seen[c], e))
            else:
                seen[c] = e
    return not violations, violations


def is_proper(g: Graph, alpha: EdgeColoring) -> bool:
    return validate_proper(g, alpha)[0]


def require_proper(g: Graph, alpha: EdgeColoring) -> None:
    ok, bad = validate_proper(g, alpha)
    if not ok:
        raise ColoringError(f"coloring is not proper; conflicting edge pairs {bad[:5]}")


def edge_of_color(g: Graph, alpha: EdgeColoring, v: int, c: int) -> Optional[int]:
    for e in g.incident(v):
        if alpha[e] == c:
            return e
    return None


def missing_colors(g: Graph, alpha: EdgeColoring, v: int) -> set[int]:
    return set(range(1, alpha.t + 1)) - {alpha[e] for e in g.incident(v)}


def is_missing(g: Graph, alpha: EdgeColoring, v: int, c: int) -> bool:
    return edge_of_color(g, alpha, v, c) is None


PLAIN = "plain"
ONE_LAST = "one-last"


@dataclass(frozen=True)
class MissingAssignment:
    """One chosen missing color per vertex.

    Under the ``one-last`` policy color 1 is chosen only when it is the sole
    missing color. Procedures that edit the assignment produce ``derived``
    assignments, which promise nothing beyond validity.
    """

    chosen: tuple[int, ...]
    policy: str = PLAIN

    def __getitem__(self, v: int) -> int:
        return self.chosen[v]

    def updated(self, changes: dict[int, int]) -> "MissingAssignment":
        ch = list(self.chosen)
        for v, c in changes.items():
            ch[v] = c
        return MissingAssignment(tuple(ch), "derived")

    def check(self, g: Graph, alpha: EdgeColoring, vertices: Optional[Iterable[int]] = None) -> None:
        for v in range(g.n) if vertices is None else vertices:
            if not is_missing(g, alpha, v, self.chosen[v]):
                raise ColoringError(f"assigned color {self.chosen[v]} is not missing at vertex {v}")
            if self.policy == ONE_LAST:
                if (self.chosen[v] == 1) != (missing_colors(g, alpha, v) == {1}):
                    raise ColoringError(f"vertex {v} violates the one-last policy")


def choose_missing(g: Graph, alpha: EdgeColoring, policy: str = ONE_LAST) -> MissingAssignment:
    """Smallest missing color per vertex; under ``one-last`` skip 1 whenever possible."""
    chosen = []
    for v in range(g.n):
        miss = missing_colors(g, alpha, v)
        if not miss:
            raise ColoringError(f"vertex {v} has degree {g.degree(v)} = t, no color is missing")
        if policy == ONE_LAST and len(miss) > 1:
            miss.discard(1)
        elif policy not in (ONE_LAST, PLAIN):
            raise ValueError(f"unknown policy {policy!r}")
        chosen.append(min(miss))
    return MissingAssignment(tuple(chosen), policy)


@dataclass(frozen=True)
class ChainComponent:
    colors: tuple[int, int]
    edges: frozenset[int]
    vertices: frozenset[int]
    shape: str
    endpoints: tuple[int, ...]

    def __contains__(self, v: int) -> bool:
        return v in self.vertices


def kempe_component(g: Graph, alpha: EdgeColoring, c: int, d: int, anchor: int) -> ChainComponent:
    """The component of the (c, d)-subgraph containing ``anchor``."""
    if c == d:
        raise ColoringError("Kempe chain needs two distinct colors")
    pair = (c, d)
    if not any(alpha[e] in pair for e in g.incident(anchor)):
        raise ColoringError(f"vertex {anchor} touches no edge colored {c} or {d}")
    seen_v = {anchor}
    seen_e = set()
    queue = deque([anchor])
    while queue:
        x = queue.popleft()
        for e in g.incident(x):
            if alpha[e] in pair and e not in seen_e:
                seen_e.add(e)
                y = g.other(e, x)
                if y not in seen_v:
                    seen_v.add(y)
                    queue.append(y)
    deg = {x: sum(1 for e in g.incident(x) if e in seen_e) for x in seen_v}
    ends = tuple(sorted(x for x, k in deg.items() if k == 1))
    if any(k > 2 for k in deg.values()) or len(ends) not in (0, 2):
        raise ColoringError(f"({c},{d})-subgraph at {anchor} is not a path or cycle; coloring improper")
    shape = "path" if ends else "even-cycle"
    return ChainComponent((min(c, d), max(c, d)), frozenset(seen_e), frozenset(seen_v), shape, ends)


@dataclass(frozen=True)
class KempeStep:
    c: int
    d: int
    anchor: int

    def to_json(self) -> dict:
        return {"c": self.c, "d": self.d, "anchor": self.anchor}


class KempeTrace:
    """Ordered Kempe changes; replay recomputes every component."""

    def __init__(self, steps: Iterable[KempeStep] = ()):
        self.steps: list[KempeStep] = list(steps)

    def append(self, step: KempeStep) -> None:
        self.steps.append(step)

    def extend(self, other: "KempeTrace | Iterable[KempeStep]") -> None:
        self.steps.extend(other.steps if isinstance(other, KempeTrace) else other)

    def reversed(self) -> "KempeTrace":
        return KempeTrace(reversed(self.steps))

    def __add__(self, other: "KempeTrace") -> "KempeTrace":
        return KempeTrace(self.steps + other.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[KempeStep]:
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, KempeTrace) and self.steps == other.steps

    def __repr__(self) -> str:
        return f"KempeTrace({self.steps!r})"

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, data: dict) -> "KempeTrace":
        try:
            return cls(KempeStep(int(s["c"]), int(s["d"]), int(s["anchor"])) for s in data["steps"])
        except (KeyError, TypeError) as exc:
            raise ColoringError(f"malformed trace JSON: {exc}") from exc


def swap_component(alpha: EdgeColoring, comp: ChainComponent) -> EdgeColoring:
    c, d = comp.colors
    cols = list(alpha.colors)
    for e in comp.edges:
        cols[e] = d if cols[e] == c else c
    return EdgeColoring(alpha.t, cols)


def kempe_swap(g: Graph, alpha: EdgeColoring, c: int, d: int, anchor: int) -> tuple[EdgeColoring, KempeStep]:
    comp = kempe_component(g, alpha, c, d, anchor)
    return swap_component(alpha, comp), KempeStep(c, d, anchor)


def apply_trace(g: Graph, alpha: EdgeColoring, trace: Iterable[KempeStep], check: bool = False) -> EdgeColoring:
    """Replay ``trace`` from ``alpha``; with ``check`` every intermediate coloring is validated."""
    _check_total(g, alpha)
    cur = alpha
    for i, step in enumerate(trace):
        if not (1 <= step.c <= alpha.t and 1 <= step.d <= alpha.t):
            raise TraceError(i, f"colors ({step.c},{step.d}) outside palette 1..{alpha.t}")
        if not 0 <= step.anchor < g.n:
            raise TraceError(i, f"anchor {step.anchor} is not a vertex")
        try:
            cur, _ = kempe_swap(g, cur, step.c, step.d, step.anchor)
        except ColoringError as exc:
            raise TraceError(i, str(exc)) from exc
        if check and not is_proper(g, cur):
            raise TraceError(i, "swap produced an improper coloring")
    return cur


def verify_trace(g: Graph, alpha: EdgeColoring, trace: Iterable[KempeStep], target: EdgeColoring) -> bool:
    try:
        final = apply_trace(g, alpha, trace, check=True)
    except TraceError:
        return False
    return final.colors == target.colors


class EdgeStatus(str, Enum):
    GOOD = "good"
    BAD = "bad"
    UGLY = "ugly"
    NEUTRAL = "neutral"


def is_matching(g: Graph, edges: Iterable[int]) -> bool:
    seen = set()
    for e in edges:
        a, b = g.edges[e]
        if a in seen or b in seen:
            return False
        seen.update((a, b))
    return True


def classify_edges(g: Graph, alpha: EdgeColoring, target: Iterable[int]) -> tuple[list[EdgeStatus], tuple[int, int]]:
    """Per-edge status relative to ``target`` (the matching that should carry color 1).

    Returns the statuses and the ``(bad, ugly)`` counts.
    """
    target = set(target)
    if not is_matching(g, target):
        raise ColoringError("target class is not a matching")
    out = []
    for e in range(g.m):
        one = alpha[e] == 1
        if e in target:
            out.append(EdgeStatus.GOOD if one else EdgeStatus.BAD)
        else:
            out.append(EdgeStatus.UGLY if one else EdgeStatus.NEUTRAL)
    return out, (out.count(EdgeStatus.BAD), out.count(EdgeStatus.UGLY))


def bad_ugly(alpha: EdgeColoring, target: frozenset[int]) -> tuple[int, int]:
    """Fast ``(bad, ugly)`` count without the matching check."""
    bad = sum(1 for e in target if alpha[e] != 1)
    ones = sum(1 for c in alpha.colors if c == 1)
    return bad, ones - (len(target) - bad)
