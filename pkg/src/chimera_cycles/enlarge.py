"""Enlarged grid representation: tripling, square extension, odd-edge removal.

Each placement coordinate (x, y) becomes (3x, 3y) and every routed grid edge
becomes a straight path of three edges.  Every vertex of the tripled graph
then grows a unit square to its north-east.  Around each odd vertex four of
the square edges are removed, which is what later limits the odd side of
every edge element to a single connection.

The result decomposes exactly into one 2x2 block per original vertex and one
width-2 corridor (a chain of alternately oriented strips) per original edge.
A route of length one leaves only a single cell column between its blocks;
that degenerate corridor is kept as a cell list without a strip chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .grid import Coord, GridStrip, GridTentacle, HORIZONTAL, Rect, VERTICAL
from .instance import Edge, InstanceGraph, RectangularRepresentation, norm_edge

GridEdge = tuple[Coord, Coord]


def norm_grid_edge(a: Coord, b: Coord) -> GridEdge:
    return (a, b) if a <= b else (b, a)


class EnlargeError(ValueError):
    pass


class DecompositionFailed(EnlargeError):
    def __init__(self, message: str, region: Optional[list[Coord]] = None):
        self.region = region or []
        super().__init__(message if not region else f"{message}: {sorted(self.region)[:8]}")


@dataclass(frozen=True)
class Corridor:
    """One edge element of the enlarged grid, oriented from the even endpoint.

    ``cells`` lists every grid vertex of the corridor.  ``strips`` is the
    canonical chain (maximal strips enumerated from the even end, the
    incoming strip keeping the corner square) or None for the degenerate
    single-column case.  ``spine`` is the tripled route polyline.
    """

    edge: Edge
    even_vertex: int
    odd_vertex: int
    cells: frozenset[Coord]
    strips: Optional[GridTentacle]
    spine: tuple[Coord, ...]

    @property
    def is_single_column(self) -> bool:
        return self.strips is None


@dataclass(frozen=True)
class EnlargedRepresentation:
    vertices: frozenset[Coord]
    edges: frozenset[GridEdge]
    blocks: dict  # vertex -> Rect (the 2x2 block)
    corridors: dict  # Edge -> Corridor  (filled by decompose_elements)
    bridges: dict  # Edge -> {"even": [GridEdge, GridEdge], "odd": [GridEdge]}

    def bounding_box(self) -> Rect:
        xs = [c[0] for c in self.vertices]
        ys = [c[1] for c in self.vertices]
        return Rect(min(xs), min(ys), max(xs), max(ys))


def _segment(a: Coord, b: Coord) -> list[Coord]:
    """Inclusive straight run of grid points from a to b (axis aligned)."""
    if a[0] == b[0]:
        step = 1 if b[1] >= a[1] else -1
        return [(a[0], y) for y in range(a[1], b[1] + step, step)]
    if a[1] == b[1]:
        step = 1 if b[0] >= a[0] else -1
        return [(x, a[1]) for x in range(a[0], b[0] + step, step)]
    raise EnlargeError(f"segment {a}-{b} not axis aligned")


def _odd_removals(x: int, y: int) -> list[GridEdge]:
    """The four extension edges not used around an odd vertex placed at
    (x, y) in the original representation."""
    return [
        norm_grid_edge((3 * x - 1, 3 * y), (3 * x, 3 * y)),
        norm_grid_edge((3 * x + 1, 3 * y), (3 * x + 1, 3 * y - 1)),
        norm_grid_edge((3 * x + 1, 3 * y + 1), (3 * x + 2, 3 * y + 1)),
        norm_grid_edge((3 * x, 3 * y + 1), (3 * x, 3 * y + 2)),
    ]


def triple_and_extend(rep: RectangularRepresentation, b: InstanceGraph) -> EnlargedRepresentation:
    """Build the enlarged grid graph; corridors are added by
    ``decompose_elements``."""
    tripled_vertices: set[Coord] = set()
    tripled_edges: set[GridEdge] = set()
    for v, (x, y) in rep.psi.items():
        tripled_vertices.add((3 * x, 3 * y))
    for edge, route in rep.routes.items():
        for i in range(len(route) - 1):
            a3 = (3 * route[i][0], 3 * route[i][1])
            b3 = (3 * route[i + 1][0], 3 * route[i + 1][1])
            run = _segment(a3, b3)
            tripled_vertices.update(run)
            for p, q in zip(run, run[1:]):
                tripled_edges.add(norm_grid_edge(p, q))

    vertices = set(tripled_vertices)
    edges = set(tripled_edges)
    for (x, y) in tripled_vertices:
        square = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]
        vertices.update(square)
        edges.add(norm_grid_edge((x, y), (x + 1, y)))
        edges.add(norm_grid_edge((x, y), (x, y + 1)))
        edges.add(norm_grid_edge((x + 1, y), (x + 1, y + 1)))
        edges.add(norm_grid_edge((x, y + 1), (x + 1, y + 1)))

    for v in b.odd_vertices():
        x, y = rep.psi[v]
        for e in _odd_removals(x, y):
            edges.discard(e)

    blocks = {v: Rect(3 * x, 3 * y, 3 * x + 1, 3 * y + 1) for v, (x, y) in rep.psi.items()}

    side = rep.side
    box = Rect(
        min(c[0] for c in vertices),
        min(c[1] for c in vertices),
        max(c[0] for c in vertices),
        max(c[1] for c in vertices),
    )
    limit = 3 * side - 1
    if box.width > limit or box.height > limit:
        raise EnlargeError(f"enlarged box {box.width}x{box.height} exceeds {limit}x{limit}")

    return EnlargedRepresentation(frozenset(vertices), frozenset(edges), blocks, {}, {})


def _band(a: Coord, b: Coord) -> set[Coord]:
    """Width-2 cell band swept by the squares of a straight tripled run."""
    cells: set[Coord] = set()
    for (x, y) in _segment(a, b):
        cells.update({(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)})
    return cells


def _direction(a: Coord, b: Coord) -> str:
    if b[0] > a[0]:
        return "E"
    if b[0] < a[0]:
        return "W"
    if b[1] > a[1]:
        return "N"
    return "S"


def _corridor_for_edge(
    rep: RectangularRepresentation, b: InstanceGraph, edge: Edge
) -> Corridor:
    even_v = b.even_endpoint(edge)
    odd_v = b.odd_endpoint(edge)
    route = list(rep.routes[edge])
    if route[0] != rep.psi[even_v]:
        route.reverse()
    spine = tuple((3 * x, 3 * y) for x, y in route)

    band: set[Coord] = set()
    for a, bb in zip(spine, spine[1:]):
        band |= _band(a, bb)
    ex, ey = spine[0]
    ox, oy = spine[-1]
    block_cells = set(Rect(ex, ey, ex + 1, ey + 1).vertices()) | set(
        Rect(ox, oy, ox + 1, oy + 1).vertices()
    )
    cells = frozenset(band - block_cells)

    # collapse the polyline to its corner points
    corners: list[Coord] = [spine[0]]
    for i in range(1, len(spine) - 1):
        if _direction(spine[i - 1], spine[i]) != _direction(spine[i], spine[i + 1]):
            corners.append(spine[i])
    corners.append(spine[-1])

    strips = _strips_from_corners(corners) if len(cells) > 2 else None
    if strips is not None:
        covered = set()
        for s in strips.strips:
            covered |= s.vertex_set()
        if covered != set(cells):
            raise DecompositionFailed(
                f"strip chain of edge {edge} does not match its corridor",
                sorted(covered ^ set(cells)),
            )
    return Corridor(edge, even_v, odd_v, cells, strips, spine)


def _strips_from_corners(corners: list[Coord]) -> GridTentacle:
    """Canonical strip chain: for each leg, the strip runs from the previous
    overlap cross-section (or the block-adjacent one) to the far wall of the
    next corner square (or the last cross-section before the far block)."""
    strips: list[GridStrip] = []
    n_legs = len(corners) - 1
    for i in range(n_legs):
        a, bb = corners[i], corners[i + 1]
        d = _direction(a, bb)
        # lateral extent of the band
        if d in ("E", "W"):
            lo, hi = min(a[0], bb[0]), max(a[0], bb[0])
            y = a[1]
            if i == 0:
                start = a[0] + 2 if d == "E" else a[0] - 1
            else:
                start = a[0] + 1 if d == "E" else a[0]
            if i == n_legs - 1:
                end = bb[0] - 1 if d == "E" else bb[0] + 2
            else:
                end = bb[0] + 1 if d == "E" else bb[0]
            rect = Rect.from_corners((start, y), (end, y + 1))
            strips.append(GridStrip(rect, HORIZONTAL))
        else:
            x = a[0]
            if i == 0:
                start = a[1] + 2 if d == "N" else a[1] - 1
            else:
                start = a[1] + 1 if d == "N" else a[1]
            if i == n_legs - 1:
                end = bb[1] - 1 if d == "N" else bb[1] + 2
            else:
                end = bb[1] + 1 if d == "N" else bb[1]
            rect = Rect.from_corners((x, start), (x, end))
            rect = Rect(rect.x0, rect.y0, rect.x0 + 1, rect.y1)
            strips.append(GridStrip(rect, VERTICAL))
    return GridTentacle(tuple(strips))


def decompose_elements(
    er: EnlargedRepresentation, rep: RectangularRepresentation, b: InstanceGraph
) -> EnlargedRepresentation:
    """Split the enlarged grid into per-vertex blocks and per-edge corridors,
    check the exact cover, and read off the connecting bridge edges."""
    corridors: dict[Edge, Corridor] = {}
    for edge in (norm_edge(u, v) for u, v in b.graph.edges()):
        corridors[edge] = _corridor_for_edge(rep, b, edge)

    owner: dict[Coord, tuple] = {}
    for v, rect in er.blocks.items():
        for c in rect.vertices():
            if c in owner:
                raise DecompositionFailed(f"cell owned twice ({owner[c]} and vertex {v})", [c])
            owner[c] = ("vertex", v)
    for edge, corridor in corridors.items():
        for c in corridor.cells:
            if c in owner:
                raise DecompositionFailed(f"cell owned twice ({owner[c]} and edge {edge})", [c])
            owner[c] = ("edge", edge)
    missing = er.vertices - set(owner)
    extra = set(owner) - er.vertices
    if missing or extra:
        raise DecompositionFailed("element cover mismatch", sorted(missing | extra))

    bridges: dict[Edge, dict] = {}
    for edge, corridor in corridors.items():
        even_rect = er.blocks[corridor.even_vertex]
        odd_rect = er.blocks[corridor.odd_vertex]
        even_edges = []
        odd_edges = []
        for (p, q) in er.edges:
            p_in = p in corridor.cells
            q_in = q in corridor.cells
            if p_in == q_in:
                continue
            block_end = q if p_in else p
            if even_rect.contains(block_end):
                even_edges.append((p, q))
            elif odd_rect.contains(block_end):
                odd_edges.append((p, q))
        if len(even_edges) != 2 or len(odd_edges) != 1:
            raise DecompositionFailed(
                f"edge {edge} connects by {len(even_edges)}/{len(odd_edges)} bridges, expected 2/1"
            )
        bridges[edge] = {"even": sorted(even_edges), "odd": odd_edges}

    return EnlargedRepresentation(er.vertices, er.edges, dict(er.blocks), corridors, bridges)


def build_enlarged(rep: RectangularRepresentation, b: InstanceGraph) -> EnlargedRepresentation:
    return decompose_elements(triple_and_extend(rep, b), rep, b)
