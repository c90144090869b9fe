"""Nice-coordinate adjacency model of the standard-shift Pegasus graph.

Nodes are ``(t, y, x, u, k)`` with slice ``t`` in {0,1,2}, cell position
``(y, x)``, partition ``u`` in {0,1} and index ``k`` in 0..3.  The model
encodes the three intra-slice coupler families:

  * cell couplers: complete bipartite K_{4,4} between the two partitions,
  * pair couplers: k0-k1 and k2-k3 within each partition of a cell,
  * chain couplers: same partition and k in the next cell along the
    partition's axis.

Cross-slice couplers are deliberately not modelled; they never contribute to
subgraphs induced on a single slice, which is all this module is used for:
checking that a slice cell's induced edge set equals the augmented unit cell
(K_{4,4} plus the two pair edges per partition).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple


class PegasusNode(NamedTuple):
    t: int
    y: int
    x: int
    u: int
    k: int


@dataclass(frozen=True)
class PegasusNiceModel:
    """Standard-shift Pegasus in nice coordinates, cells indexed 0..size-2."""

    size: int
    include_pair_edges: bool = True

    @property
    def cell_span(self) -> int:
        return self.size - 1

    def in_bounds(self, n: PegasusNode) -> bool:
        return (
            0 <= n.t < 3
            and 0 <= n.y < self.cell_span
            and 0 <= n.x < self.cell_span
            and n.u in (0, 1)
            and 0 <= n.k < 4
        )

    def nodes(self) -> Iterator[PegasusNode]:
        for t in range(3):
            for y in range(self.cell_span):
                for x in range(self.cell_span):
                    for u in (0, 1):
                        for k in range(4):
                            yield PegasusNode(t, y, x, u, k)

    def neighbors(self, n: PegasusNode) -> set[PegasusNode]:
        if not self.in_bounds(n):
            raise ValueError(f"node {n} out of bounds")
        out: set[PegasusNode] = set()
        for k in range(4):
            cand = PegasusNode(n.t, n.y, n.x, 1 - n.u, k)
            if self.in_bounds(cand):
                out.add(cand)
        if self.include_pair_edges:
            cand = PegasusNode(n.t, n.y, n.x, n.u, n.k ^ 1)
            if self.in_bounds(cand):
                out.add(cand)
        dy, dx = (1, 0) if n.u == 0 else (0, 1)
        for sign in (1, -1):
            cand = PegasusNode(n.t, n.y + sign * dy, n.x + sign * dx, n.u, n.k)
            if self.in_bounds(cand):
                out.add(cand)
        return out

    def cell_nodes(self, t: int, y: int, x: int) -> list[PegasusNode]:
        return [PegasusNode(t, y, x, u, k) for u in (0, 1) for k in range(4)]


def _augmented_cell_edges() -> set[frozenset[tuple[int, int]]]:
    """Edge set of the augmented unit cell over local labels (u, k)."""
    edges: set[frozenset[tuple[int, int]]] = set()
    for j in range(4):
        for k in range(4):
            edges.add(frozenset({(0, j), (1, k)}))
    for u in (0, 1):
        edges.add(frozenset({(u, 0), (u, 1)}))
        edges.add(frozenset({(u, 2), (u, 3)}))
    return edges


AUGMENTED_CELL_EDGE_COUNT = 20  # 16 cell couplers + 4 pair couplers


def pegasus_contains_augmented_cell(model: PegasusNiceModel) -> bool:
    """True when some t=0 slice cell induces exactly the augmented unit cell.

    The search is anchored at nice coordinates: each candidate is a cell of
    the t=0 slice, and the check compares its induced edge set against the
    augmented-cell edge list.  No general subgraph isomorphism is involved.
    """
    if model.cell_span < 1:
        return False
    want = _augmented_cell_edges()
    for y in range(model.cell_span):
        for x in range(model.cell_span):
            cell = set(model.cell_nodes(0, y, x))
            got: set[frozenset[tuple[int, int]]] = set()
            for n in cell:
                for m in model.neighbors(n):
                    if m in cell:
                        got.add(frozenset({(n.u, n.k), (m.u, m.k)}))
            if got == want:
                return True
    return False
