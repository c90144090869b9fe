"""Broken Chimera topologies: grid-of-K44-cells graphs with a broken-node mask.

A node is addressed ``(col, row, orientation, k)``.  Horizontal nodes couple
to the cells above and below (row +/- 1), vertical nodes to the cells left and
right (col +/- 1); within a cell every horizontal node is adjacent to every
vertical node.  The optional augmentation adds the two intra-partition pair
edges (k0-k1, k2-k3) per orientation per cell, which matches the internal
connectivity of a Pegasus unit cell and breaks bipartiteness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .graphs import SimpleGraph

H = 0  # horizontal partition
V = 1  # vertical partition

_ORIENT_CHAR = {H: "h", V: "v"}


class ChimeraNode(NamedTuple):
    col: int
    row: int
    orient: int  # H or V
    k: int

    def name(self) -> str:
        return f"c{self.col}r{self.row}{_ORIENT_CHAR[self.orient]}{self.k}"


def node_class(node: ChimeraNode) -> int:
    """Bipartition class: (col + row + orientation bit) mod 2, 0 = even.

    Every non-augmented Chimera edge joins opposite classes; the coloring is
    fixed so that (0, 0, horizontal, k) is even.
    """
    return (node.col + node.row + node.orient) % 2


def parse_node_name(name: str) -> ChimeraNode:
    if not name.startswith("c"):
        raise ValueError(f"bad node name {name!r}")
    rest = name[1:]
    ri = rest.index("r")
    col = int(rest[:ri])
    rest = rest[ri + 1 :]
    for i, ch in enumerate(rest):
        if ch in "hv":
            return ChimeraNode(col, int(rest[:i]), H if ch == "h" else V, int(rest[i + 1 :]))
    raise ValueError(f"bad node name {name!r}")


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class ChimeraTopology:
    """Finite (broken) Chimera graph; immutable and hashable.

    ``broken`` is the set of missing nodes; adjacency is derived, never
    stored.  ``augmented=True`` adds the Pegasus-style pair edges.
    """

    cols: int
    rows: int
    depth: int = 4
    broken: frozenset[ChimeraNode] = field(default_factory=frozenset)
    augmented: bool = False

    def __post_init__(self) -> None:
        if self.cols < 1 or self.rows < 1:
            raise TopologyError("cols and rows must be >= 1")
        if self.depth < 4:
            raise TopologyError("depth must be >= 4")
        for b in self.broken:
            if not self.in_bounds(b):
                raise TopologyError(f"broken node {b} out of bounds")

    def in_bounds(self, node: ChimeraNode) -> bool:
        return (
            0 <= node.col < self.cols
            and 0 <= node.row < self.rows
            and node.orient in (H, V)
            and 0 <= node.k < self.depth
        )

    def is_present(self, node: ChimeraNode) -> bool:
        return self.in_bounds(node) and node not in self.broken

    def nodes(self) -> Iterator[ChimeraNode]:
        """Non-broken nodes in the stable order (row, col, orient, k)."""
        for row in range(self.rows):
            for col in range(self.cols):
                for orient in (H, V):
                    for k in range(self.depth):
                        node = ChimeraNode(col, row, orient, k)
                        if node not in self.broken:
                            yield node

    @property
    def node_count(self) -> int:
        return 2 * self.depth * self.cols * self.rows - len(self.broken)

    def neighbors(self, node: ChimeraNode) -> set[ChimeraNode]:
        if not self.in_bounds(node):
            raise TopologyError(f"node {node} out of bounds")
        if node in self.broken:
            raise TopologyError(f"node {node} is broken")
        out: set[ChimeraNode] = set()
        c, r, o, k = node
        other = V if o == H else H
        for j in range(self.depth):
            cand = ChimeraNode(c, r, other, j)
            if self.is_present(cand):
                out.add(cand)
        if o == H:
            steps = ((0, 1), (0, -1))
        else:
            steps = ((1, 0), (-1, 0))
        for dc, dr in steps:
            cand = ChimeraNode(c + dc, r + dr, o, k)
            if self.is_present(cand):
                out.add(cand)
        if self.augmented:
            mate = ChimeraNode(c, r, o, k ^ 1)
            if self.is_present(mate):
                out.add(mate)
        return out

    def has_edge(self, a: ChimeraNode, b: ChimeraNode) -> bool:
        return self.is_present(a) and self.is_present(b) and b in self.neighbors(a)

    def edges(self) -> Iterator[tuple[ChimeraNode, ChimeraNode]]:
        for a in self.nodes():
            for b in self.neighbors(a):
                if a < b:
                    yield (a, b)

    def with_broken(self, extra: Iterable[ChimeraNode]) -> "ChimeraTopology":
        return ChimeraTopology(
            self.cols, self.rows, self.depth, self.broken | frozenset(extra), self.augmented
        )

    def augment(self) -> "ChimeraTopology":
        return ChimeraTopology(self.cols, self.rows, self.depth, self.broken, True)


@dataclass(frozen=True)
class MaterializedChimera:
    """SimpleGraph view of a topology plus the node-order round-trip tables."""

    graph: SimpleGraph
    order: tuple[ChimeraNode, ...]
    index: dict  # ChimeraNode -> int

    def node_of(self, i: int) -> ChimeraNode:
        return self.order[i]

    def index_of(self, node: ChimeraNode) -> int:
        return self.index[node]


def materialize(topology: ChimeraTopology) -> MaterializedChimera:
    """Vertex-induced simple graph over the non-broken nodes.

    Node order is lexicographic in (row, col, orientation bit, k) so exports
    and golden files are stable.
    """
    order = tuple(topology.nodes())
    index = {node: i for i, node in enumerate(order)}
    edges = [
        (index[a], index[b])
        for a in order
        for b in topology.neighbors(a)
        if index[a] < index[b]
    ]
    labels = tuple(n.name() for n in order)
    return MaterializedChimera(SimpleGraph(len(order), edges, labels), order, index)


def nodes_adjacent(a: ChimeraNode, b: ChimeraNode, augmented: bool = False) -> bool:
    """Adjacency rule of the unbounded lattice (no bounds, no mask)."""
    if a == b:
        return False
    if a.col == b.col and a.row == b.row:
        if a.orient != b.orient:
            return True
        return augmented and a.k == (b.k ^ 1)
    if a.orient != b.orient or a.k != b.k:
        return False
    if a.orient == H:
        return a.col == b.col and abs(a.row - b.row) == 1
    return a.row == b.row and abs(a.col - b.col) == 1


def neighbors_in_set(
    node: ChimeraNode, alive: frozenset | set, augmented: bool = False
) -> Iterator[ChimeraNode]:
    """Neighbors of ``node`` under the unbounded rule, restricted to ``alive``."""
    c, r, o, k = node
    other = V if o == H else H
    for j in range(4):
        cand = ChimeraNode(c, r, other, j)
        if cand in alive:
            yield cand
    steps = ((0, 1), (0, -1)) if o == H else ((1, 0), (-1, 0))
    for dc, dr in steps:
        cand = ChimeraNode(c + dc, r + dr, o, k)
        if cand in alive:
            yield cand
    if augmented:
        cand = ChimeraNode(c, r, o, k ^ 1)
        if cand in alive:
            yield cand


def induced_graph(
    nodes: Iterable[ChimeraNode], augmented: bool = False
) -> MaterializedChimera:
    """SimpleGraph induced on an arbitrary node set under the unbounded rule.

    Depth is implicitly 4 (k values above 3 never appear in this artifact).
    """
    alive = frozenset(nodes)
    order = tuple(sorted(alive, key=lambda n: (n.row, n.col, n.orient, n.k)))
    index = {node: i for i, node in enumerate(order)}
    edges = []
    for a in order:
        for b in neighbors_in_set(a, alive, augmented):
            if index[a] < index[b]:
                edges.append((index[a], index[b]))
    labels = tuple(n.name() for n in order)
    return MaterializedChimera(SimpleGraph(len(order), edges, labels), order, index)


def induced_subgraph_nodes(topology: ChimeraTopology, keep: Iterable[ChimeraNode]) -> ChimeraTopology:
    """Topology restricted to ``keep``: everything else becomes broken."""
    keep_set = set(keep)
    broken = {
        ChimeraNode(c, r, o, k)
        for r in range(topology.rows)
        for c in range(topology.cols)
        for o in (H, V)
        for k in range(topology.depth)
        if ChimeraNode(c, r, o, k) not in keep_set
    }
    return ChimeraTopology(topology.cols, topology.rows, topology.depth, frozenset(broken), topology.augmented)
