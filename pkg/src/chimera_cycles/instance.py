"""Input-class validation and parity-preserving rectangular representations.

Accepted inputs are connected bipartite graphs with every degree 2 or 3 and
equally many even and odd vertices.  A rectangular representation places the
vertices injectively on the integer grid, preserving parity, and routes each
edge as a grid path whose interior touches nothing else.

Planarity is never tested directly: a successful grid embedding is the
operational certificate, and exhaustion of the bounded search space is
reported as "not embeddable at this bound", nothing stronger.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .graphs import SimpleGraph
from .grid import Coord, Rect, grid_adjacent, parity

EVEN = 0
ODD = 1


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.code}({self.detail})" if self.detail else self.code


class InstanceError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(map(str, violations)))


@dataclass(frozen=True)
class InstanceGraph:
    graph: SimpleGraph
    parity_label: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.graph.n

    def even_vertices(self) -> list[int]:
        return [v for v in self.graph.vertices() if self.parity_label[v] == EVEN]

    def odd_vertices(self) -> list[int]:
        return [v for v in self.graph.vertices() if self.parity_label[v] == ODD]

    def even_endpoint(self, edge: tuple[int, int]) -> int:
        u, v = edge
        return u if self.parity_label[u] == EVEN else v

    def odd_endpoint(self, edge: tuple[int, int]) -> int:
        u, v = edge
        return v if self.parity_label[u] == EVEN else u


def instance_violations(
    g: SimpleGraph, labels: Optional[Sequence[int]] = None
) -> tuple[list[Violation], Optional[tuple[int, ...]]]:
    """All violated membership conditions, plus the labels that were checked.

    When labels are omitted, a bipartition is computed and the class of the
    lowest-indexed vertex is called even.
    """
    violations: list[Violation] = []
    if g.n == 0:
        return [Violation("Disconnected", "empty graph")], None
    if labels is None:
        computed = g.bipartition()
        if computed is None:
            return [Violation("NotBipartite")], None
        labels = computed
    else:
        labels = list(labels)
        if len(labels) != g.n or any(l not in (EVEN, ODD) for l in labels):
            return [Violation("NotBipartite", "bad label vector")], None
        for u, v in g.edges():
            if labels[u] == labels[v]:
                violations.append(Violation("NotBipartite", f"edge ({u},{v})"))
                break
    for v in g.vertices():
        d = g.degree(v)
        if d == 1:
            violations.append(Violation("HasDegreeOne", str(v)))
        elif d not in (2, 3):
            violations.append(Violation("BadDegree", f"vertex {v} degree {d}"))
    n_even = sum(1 for l in labels if l == EVEN)
    if n_even * 2 != g.n:
        violations.append(Violation("ParityImbalance", f"{n_even} even vs {g.n - n_even} odd"))
    if not g.is_connected():
        violations.append(Violation("Disconnected"))
    return violations, tuple(labels)


def validate_instance(g: SimpleGraph, labels: Optional[Sequence[int]] = None) -> InstanceGraph:
    violations, checked = instance_violations(g, labels)
    if violations or checked is None:
        raise InstanceError(violations)
    return InstanceGraph(g, checked)


Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class RectangularRepresentation:
    """Placement psi plus per-edge grid routes; routes run from psi[u] to
    psi[v] for the normalized edge (u, v) with u < v."""

    psi: dict  # vertex -> Coord
    routes: dict  # Edge -> tuple[Coord, ...]

    def bounding_box(self) -> Rect:
        xs: list[int] = []
        ys: list[int] = []
        for c in self.psi.values():
            xs.append(c[0])
            ys.append(c[1])
        for route in self.routes.values():
            for c in route:
                xs.append(c[0])
                ys.append(c[1])
        return Rect(min(xs), min(ys), max(xs), max(ys))

    @property
    def side(self) -> int:
        box = self.bounding_box()
        return max(box.width, box.height)

    def translated(self, dx: int, dy: int) -> "RectangularRepresentation":
        return RectangularRepresentation(
            {v: (c[0] + dx, c[1] + dy) for v, c in self.psi.items()},
            {e: tuple((x + dx, y + dy) for x, y in r) for e, r in self.routes.items()},
        )

    def normalized(self) -> "RectangularRepresentation":
        """Translate the bounding box toward the origin by an even vector so
        vertex parities are untouched."""
        box = self.bounding_box()
        dx = -2 * (box.x0 // 2)
        dy = -2 * (box.y0 // 2)
        return self.translated(dx, dy)


def rect_rep_violations(b: InstanceGraph, rep: RectangularRepresentation) -> list[Violation]:
    violations: list[Violation] = []
    g = b.graph
    if set(rep.psi.keys()) != set(g.vertices()):
        violations.append(Violation("PlacementDomain", "psi keys != vertex set"))
        return violations
    coords = list(rep.psi.values())
    if len(set(coords)) != len(coords):
        violations.append(Violation("PlacementOverlap", "psi not injective"))
    for v in g.vertices():
        if parity(rep.psi[v]) != b.parity_label[v]:
            violations.append(Violation("ParityMismatch", f"vertex {v} at {rep.psi[v]}"))
    expected_edges = set(norm_edge(u, v) for u, v in g.edges())
    if set(rep.routes.keys()) != expected_edges:
        violations.append(Violation("RouteDomain", "route keys != edge set"))
        return violations
    psi_cells = set(rep.psi.values())
    seen_interior: dict[Coord, Edge] = {}
    for (u, v), route in sorted(rep.routes.items()):
        if len(route) < 2 or route[0] != rep.psi[u] or route[-1] != rep.psi[v]:
            violations.append(Violation("RouteEndpoints", f"edge ({u},{v})"))
            continue
        if any(not grid_adjacent(route[i], route[i + 1]) for i in range(len(route) - 1)):
            violations.append(Violation("RouteNotPath", f"edge ({u},{v})"))
            continue
        interior = route[1:-1]
        if len(set(interior)) != len(interior):
            violations.append(Violation("RouteSelfIntersection", f"edge ({u},{v})"))
        for c in interior:
            if c in psi_cells:
                violations.append(Violation("RouteHitsVertex", f"edge ({u},{v}) at {c}"))
            elif c in seen_interior:
                violations.append(
                    Violation("RouteIntersection", f"({u},{v}) and {seen_interior[c]} at {c}")
                )
            else:
                seen_interior[c] = (u, v)
    return violations


def validate_rect_rep(b: InstanceGraph, rep: RectangularRepresentation) -> tuple[bool, list[Violation]]:
    v = rect_rep_violations(b, rep)
    return (not v, v)


NOT_FOUND = "not_found"
TIMEOUT = "timeout"
FOUND = "found"


@dataclass
class EmbedResult:
    status: str
    representation: Optional[RectangularRepresentation] = None
    attempts: int = 0


@dataclass
class _EmbedState:
    side: int
    occupied: dict = field(default_factory=dict)  # Coord -> ("vertex", v) | ("route", edge)
    psi: dict = field(default_factory=dict)
    routes: dict = field(default_factory=dict)


def _route_paths(state: _EmbedState, a: Coord, b: Coord, budget_check) -> Iterator[tuple[Coord, ...]]:
    """All simple grid paths from a to b over unoccupied cells, greedy-first.

    Enumeration order prefers steps that close the distance to b, which makes
    the first yielded path short; later paths back the search's exhaustive
    claim at small bounds.
    """
    side = state.side
    occupied = state.occupied
    path = [a]
    on_path = {a}

    def steps(c: Coord) -> list[Coord]:
        x, y = c
        cands = [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
        cands = [
            p
            for p in cands
            if 0 <= p[0] < side and 0 <= p[1] < side and p not in on_path
            and (p == b or p not in occupied)
        ]
        cands.sort(key=lambda p: (abs(p[0] - b[0]) + abs(p[1] - b[1]), p))
        return cands

    stack = [steps(a)]
    while stack:
        budget_check()
        options = stack[-1]
        if not options:
            stack.pop()
            on_path.discard(path.pop())
            continue
        nxt = options.pop(0)
        path.append(nxt)
        on_path.add(nxt)
        if nxt == b:
            yield tuple(path)
            on_path.discard(path.pop())
            continue
        stack.append(steps(nxt))


class _Budget:
    def __init__(self, node_limit: int, time_limit: float):
        self.node_limit = node_limit
        self.deadline = time.monotonic() + time_limit
        self.count = 0

    def tick(self) -> None:
        self.count += 1
        if self.count > self.node_limit:
            raise _BudgetExceeded()
        if self.count % 4096 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded()


class _BudgetExceeded(Exception):
    pass


def embed_grid(
    b: InstanceGraph,
    side_bound: Optional[int] = None,
    seed: int = 0,
    node_limit: int = 5_000_000,
    time_limit: float = 120.0,
) -> EmbedResult:
    """Search for a parity-preserving representation inside a bounded square.

    Backtracks over vertex placements (heuristically ordered, seed-jittered)
    and over edge routes (exhaustively enumerated), so NOT_FOUND certifies
    that no representation exists within ``side_bound``; hitting the budget
    is reported as TIMEOUT instead.
    """
    g = b.graph
    side = side_bound if side_bound is not None else max(2, 3 * g.n)
    rng = random.Random(seed)
    budget = _Budget(node_limit, time_limit)

    order: list[int] = []
    seen = {0}
    queue = [0]
    while queue:
        u = queue.pop(0)
        order.append(u)
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)

    state = _EmbedState(side)

    def placed_neighbors(v: int) -> list[int]:
        return [w for w in g.neighbors(v) if w in state.psi]

    def candidate_cells(v: int) -> list[Coord]:
        want = b.parity_label[v]
        anchors = [state.psi[w] for w in placed_neighbors(v)]
        cells = [
            (x, y)
            for x in range(side)
            for y in range(side)
            if (x + y) % 2 == want and (x, y) not in state.occupied
        ]
        rng.shuffle(cells)
        if anchors:
            cells.sort(key=lambda c: (sum(abs(c[0] - a[0]) + abs(c[1] - a[1]) for a in anchors), c))
        else:
            cells.sort(key=lambda c: (abs(c[0] - side // 2) + abs(c[1] - side // 2), c))
        return cells

    def route_edges(oi: int, v: int, targets: list[int], ti: int) -> bool:
        """Route v's edges to already-placed neighbors one by one, trying all
        alternatives of each before giving up, then continue placing."""
        if ti == len(targets):
            return place_vertex(oi + 1)
        w = targets[ti]
        edge = norm_edge(v, w)
        a, bb = (state.psi[edge[0]], state.psi[edge[1]])
        for route in _route_paths(state, a, bb, budget.tick):
            interior = route[1:-1]
            state.routes[edge] = route
            for c in interior:
                state.occupied[c] = ("route", edge)
            if route_edges(oi, v, targets, ti + 1):
                return True
            for c in interior:
                del state.occupied[c]
            del state.routes[edge]
        return False

    def place_vertex(oi: int) -> bool:
        if oi == len(order):
            return True
        v = order[oi]
        for cell in candidate_cells(v):
            budget.tick()
            state.psi[v] = cell
            state.occupied[cell] = ("vertex", v)
            if route_edges(oi, v, sorted(placed_neighbors(v)), 0):
                return True
            del state.occupied[cell]
            del state.psi[v]
        return False

    try:
        ok = place_vertex(0)
    except _BudgetExceeded:
        return EmbedResult(TIMEOUT, attempts=budget.count)
    if not ok:
        return EmbedResult(NOT_FOUND, attempts=budget.count)
    rep = RectangularRepresentation(dict(state.psi), dict(state.routes)).normalized()
    valid, violations = validate_rect_rep(b, rep)
    if not valid:
        raise AssertionError(f"embedder produced invalid representation: {violations}")
    return EmbedResult(FOUND, rep, budget.count)
