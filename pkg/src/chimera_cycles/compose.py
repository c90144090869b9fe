"""Assembly of the hardware-graph instance from grid elements.

Every original vertex becomes a rotated copy of the vertex gadget anchored at
cell (3x, 3y); every original edge becomes the unit cells of its corridor
with end patterns knocked out so that exactly two bridge edges survive
toward the even endpoint's element and one toward the odd endpoint's.  The
whole graph is the subgraph induced on the union of the element node sets,
which the composition validates node by node.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .chimera import (
    H,
    V,
    ChimeraNode,
    ChimeraTopology,
    neighbors_in_set,
    node_class,
)
from .enlarge import Corridor, EnlargedRepresentation
from .gadget import (
    BLUE,
    CANONICAL_PORTS,
    EAST,
    GREEN,
    NORTH,
    R_LANE,
    SOUTH,
    U_LANE,
    WEST,
    TentacleEndPattern,
    VertexGadget,
    default_end_patterns,
    rotate_direction,
    rotate_offset,
)
from .grid import Coord
from .instance import Edge, InstanceGraph, RectangularRepresentation, norm_edge

_STEP = {EAST: (1, 0), WEST: (-1, 0), NORTH: (0, 1), SOUTH: (0, -1)}
_AXIS_ORIENT = {EAST: V, WEST: V, NORTH: H, SOUTH: H}


class CompositionError(ValueError):
    pass


class PatternOverlap(CompositionError):
    pass


@dataclass(frozen=True)
class VertexElement:
    vertex: int
    base: Coord  # lower-left cell of the 2x2 block
    rotation: int  # quarter turns counterclockwise
    dir_port: dict  # direction -> canonical port label
    u_nodes: dict  # direction -> absolute entry node
    r_nodes: dict  # direction -> absolute re-entry node
    alive: frozenset


@dataclass(frozen=True)
class TentacleElement:
    edge: Edge
    even_vertex: int
    odd_vertex: int
    dir_even: str  # attach direction seen from the even vertex
    dir_odd: str
    cells: tuple
    alive_by_cell: dict  # cell -> {H: frozenset, V: frozenset}
    alive: frozenset
    t_even: ChimeraNode
    t_even_re: ChimeraNode
    t_odd: ChimeraNode
    special: bool


@dataclass(frozen=True)
class EdgeBridges:
    """The three induced edges joining a corridor element to its vertex
    elements: (gadget node, tentacle node) pairs."""

    even_entry: tuple
    even_reentry: tuple
    odd_entry: tuple

    def all_pairs(self) -> tuple:
        return (self.even_entry, self.even_reentry, self.odd_entry)


@dataclass(frozen=True)
class BrokenChimera:
    topology: ChimeraTopology
    instance: InstanceGraph
    vertex_elements: dict
    edge_elements: dict
    ownership: dict  # alive node -> ("v", vertex) | ("e", edge)
    bridges: dict  # Edge -> EdgeBridges

    @property
    def alive(self) -> frozenset:
        return frozenset(self.ownership)

    def junction_u(self, x: int, y: int) -> ChimeraNode:
        """Entry node of x's element on the side facing neighbor y."""
        elem = self.edge_elements[norm_edge(x, y)]
        d = elem.dir_even if x == elem.even_vertex else elem.dir_odd
        return self.vertex_elements[x].u_nodes[d]

    def junction_r(self, x: int, y: int) -> ChimeraNode:
        elem = self.edge_elements[norm_edge(x, y)]
        d = elem.dir_even if x == elem.even_vertex else elem.dir_odd
        return self.vertex_elements[x].r_nodes[d]


def rotation_for_directions(dirs: Iterable[str]) -> int:
    """Quarter turns making the canonical port T cover the used directions;
    degree-3 vertices need an exact match, degree-2 take the smallest angle."""
    want = set(dirs)
    canonical = {WEST, EAST, SOUTH}
    for q in range(4):
        rotated = {rotate_direction(d, q) for d in canonical}
        if len(want) == 3 and rotated == want:
            return q
        if len(want) == 2 and want <= rotated:
            return q
    raise CompositionError(f"no port rotation covers directions {sorted(want)}")


def build_vertex_element(
    vertex: int, base_grid: Coord, dirs: dict, gadget: VertexGadget
) -> VertexElement:
    q = rotation_for_directions(dirs.keys())
    dir_port = {}
    u_nodes = {}
    r_nodes = {}
    for p, (d0, u_off, r_off) in CANONICAL_PORTS.items():
        d = rotate_direction(d0, q)
        dir_port[d] = p
        u = rotate_offset(u_off, q)
        r = rotate_offset(r_off, q)
        u_nodes[d] = ChimeraNode(base_grid[0] + u.col, base_grid[1] + u.row, u.orient, u.k)
        r_nodes[d] = ChimeraNode(base_grid[0] + r.col, base_grid[1] + r.row, r.orient, r.k)
    alive = frozenset(
        ChimeraNode(base_grid[0] + off.col, base_grid[1] + off.row, off.orient, off.k)
        for off in (rotate_offset(n, q) for n in gadget.alive)
    )
    return VertexElement(vertex, base_grid, q, dir_port, u_nodes, r_nodes, alive)


def build_tentacle(cells: Iterable[Coord], depth: int = 4) -> frozenset:
    """Unmodified corridor element: every node of every listed unit cell."""
    return frozenset(
        ChimeraNode(c[0], c[1], o, k) for c in cells for o in (H, V) for k in range(depth)
    )


def _pattern_cells(
    element_u_cell: Coord, element_r_cell: Coord, direction: str
) -> tuple[Coord, Coord]:
    """Tentacle end cells facing the element's u and r cells."""
    dc, dr = _STEP[direction]
    return (
        (element_u_cell[0] + dc, element_u_cell[1] + dr),
        (element_r_cell[0] + dc, element_r_cell[1] + dr),
    )


def _apply_end_pattern(
    broken: set,
    pattern: TentacleEndPattern,
    u_cell: Coord,
    r_cell: Coord,
    direction: str,
) -> None:
    interface = _AXIS_ORIENT[direction]
    cross = V if interface == H else H
    for lane, cell in ((U_LANE, u_cell), (R_LANE, r_cell)):
        int_broken, cross_broken = pattern.lane_broken(lane)
        for k in int_broken:
            broken.add(ChimeraNode(cell[0], cell[1], interface, k))
        for k in cross_broken:
            broken.add(ChimeraNode(cell[0], cell[1], cross, k))


def modify_tentacle(
    corridor: Corridor,
    even_element: VertexElement,
    odd_element: VertexElement,
    patterns: Optional[dict] = None,
    depth: int = 4,
) -> TentacleElement:
    """Apply the end patterns to a corridor's unit cells.

    A single-column corridor takes only the odd-end pattern; its lone column
    faces both vertex elements at once.
    """
    if patterns is None:
        patterns = default_end_patterns()
    if depth != 4:
        raise CompositionError("corridor patterns ship for depth 4 only")
    spine = corridor.spine
    dir_even = _direction_cells(spine[0], spine[1])
    dir_odd = _direction_cells(spine[-1], spine[-2])

    u_even = even_element.u_nodes[dir_even]
    r_even = even_element.r_nodes[dir_even]
    u_odd = odd_element.u_nodes[dir_odd]
    r_odd = odd_element.r_nodes[dir_odd]

    even_cells = _pattern_cells(
        (u_even.col, u_even.row), (r_even.col, r_even.row), dir_even
    )
    odd_cells = _pattern_cells((u_odd.col, u_odd.row), (r_odd.col, r_odd.row), dir_odd)
    cell_set = set(corridor.cells)
    for c in (*even_cells, *odd_cells):
        if c not in cell_set:
            raise CompositionError(f"end cell {c} of edge {corridor.edge} not in its corridor")

    broken: set = set()
    if corridor.is_single_column:
        if set(even_cells) != set(odd_cells):
            raise CompositionError("single-column corridor ends disagree")
        _apply_end_pattern(broken, patterns[BLUE], odd_cells[0], odd_cells[1], dir_odd)
    else:
        if set(even_cells) & set(odd_cells):
            raise PatternOverlap(
                f"edge {corridor.edge}: end patterns claim a common cell {set(even_cells) & set(odd_cells)}"
            )
        _apply_end_pattern(broken, patterns[GREEN], even_cells[0], even_cells[1], dir_even)
        _apply_end_pattern(broken, patterns[BLUE], odd_cells[0], odd_cells[1], dir_odd)

    alive = build_tentacle(corridor.cells, depth) - broken
    alive_by_cell = {
        c: {
            H: frozenset(n.k for n in alive if (n.col, n.row, n.orient) == (c[0], c[1], H)),
            V: frozenset(n.k for n in alive if (n.col, n.row, n.orient) == (c[0], c[1], V)),
        }
        for c in corridor.cells
    }

    step_e = _STEP[dir_even]
    step_o = _STEP[dir_odd]
    t_even = ChimeraNode(u_even.col + step_e[0], u_even.row + step_e[1], u_even.orient, u_even.k)
    t_even_re = ChimeraNode(r_even.col + step_e[0], r_even.row + step_e[1], r_even.orient, r_even.k)
    t_odd = ChimeraNode(u_odd.col + step_o[0], u_odd.row + step_o[1], u_odd.orient, u_odd.k)
    for t, label in ((t_even, "even entry"), (t_even_re, "even re-entry"), (t_odd, "odd entry")):
        if t not in alive:
            raise CompositionError(f"{label} bridge node {t.name()} broken in edge {corridor.edge}")
    if node_class(t_even) == node_class(t_odd):
        raise CompositionError(
            f"edge {corridor.edge}: bridge endpoints {t_even.name()},{t_odd.name()} share a class"
        )

    return TentacleElement(
        corridor.edge,
        corridor.even_vertex,
        corridor.odd_vertex,
        dir_even,
        dir_odd,
        tuple(sorted(corridor.cells)),
        alive_by_cell,
        frozenset(alive),
        t_even,
        t_even_re,
        t_odd,
        corridor.is_single_column,
    )


def _direction_cells(a: Coord, b: Coord) -> str:
    if b[0] > a[0]:
        return EAST
    if b[0] < a[0]:
        return WEST
    if b[1] > a[1]:
        return NORTH
    return SOUTH


def compose(
    b: InstanceGraph,
    rep: RectangularRepresentation,
    er: EnlargedRepresentation,
    gadget: VertexGadget,
    patterns: Optional[dict] = None,
) -> BrokenChimera:
    """Place all elements, derive the bounded topology, and validate that the
    union of elements induces exactly the declared bridges between them."""
    if not er.corridors:
        raise CompositionError("enlarged representation is not decomposed")
    if patterns is None:
        patterns = default_end_patterns()

    directions_of: dict[int, dict] = {v: {} for v in b.graph.vertices()}
    for edge, corridor in er.corridors.items():
        d_e = _direction_cells(corridor.spine[0], corridor.spine[1])
        d_o = _direction_cells(corridor.spine[-1], corridor.spine[-2])
        directions_of[corridor.even_vertex][d_e] = corridor.odd_vertex
        directions_of[corridor.odd_vertex][d_o] = corridor.even_vertex

    vertex_elements: dict[int, VertexElement] = {}
    for v in b.graph.vertices():
        x, y = rep.psi[v]
        vertex_elements[v] = build_vertex_element(v, (3 * x, 3 * y), directions_of[v], gadget)

    edge_elements: dict[Edge, TentacleElement] = {}
    for edge, corridor in er.corridors.items():
        edge_elements[edge] = modify_tentacle(
            corridor, vertex_elements[corridor.even_vertex], vertex_elements[corridor.odd_vertex], patterns
        )

    ownership: dict[ChimeraNode, tuple] = {}
    for v, elem in vertex_elements.items():
        for n in elem.alive:
            if n in ownership:
                raise CompositionError(f"node {n.name()} owned twice")
            ownership[n] = ("v", v)
    for edge, elem in edge_elements.items():
        for n in elem.alive:
            if n in ownership:
                raise CompositionError(f"node {n.name()} owned twice")
            ownership[n] = ("e", edge)

    bridges: dict[Edge, EdgeBridges] = {}
    for edge, elem in edge_elements.items():
        u_e = vertex_elements[elem.even_vertex].u_nodes[elem.dir_even]
        r_e = vertex_elements[elem.even_vertex].r_nodes[elem.dir_even]
        u_o = vertex_elements[elem.odd_vertex].u_nodes[elem.dir_odd]
        bridges[edge] = EdgeBridges((u_e, elem.t_even), (r_e, elem.t_even_re), (u_o, elem.t_odd))

    declared = {}
    for edge, br in bridges.items():
        for g_node, t_node in br.all_pairs():
            declared[frozenset((g_node, t_node))] = edge

    alive = frozenset(ownership)
    cross_counts: dict[Edge, int] = {e: 0 for e in edge_elements}
    for n in alive:
        for m in neighbors_in_set(n, alive):
            if ownership[n] == ownership[m]:
                continue
            key = frozenset((n, m))
            if key not in declared:
                raise CompositionError(
                    f"undeclared induced edge {n.name()}-{m.name()} between "
                    f"{ownership[n]} and {ownership[m]}"
                )
            if n < m:
                cross_counts[declared[key]] += 1
    for edge, count in cross_counts.items():
        if count != 3:
            raise CompositionError(f"edge {edge} has {count} bridges, expected 3")

    max_col = max(n.col for n in alive)
    max_row = max(n.row for n in alive)
    if min(n.col for n in alive) < 0 or min(n.row for n in alive) < 0:
        raise CompositionError("element nodes at negative cells; normalize the representation")
    all_nodes = {
        ChimeraNode(c, r, o, k)
        for c in range(max_col + 1)
        for r in range(max_row + 1)
        for o in (H, V)
        for k in range(4)
    }
    topology = ChimeraTopology(
        max_col + 1, max_row + 1, 4, frozenset(all_nodes - alive), augmented=False
    )

    return BrokenChimera(topology, b, vertex_elements, edge_elements, ownership, bridges)


def pegasus_augment(c: BrokenChimera) -> BrokenChimera:
    """Same node set, ownership and bridges; only the intra-cell pair edges
    are switched on wherever both endpoints are present."""
    return replace(c, topology=c.topology.augment())
