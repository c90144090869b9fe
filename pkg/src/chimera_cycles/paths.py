"""Constructive Hamiltonian snakes through corridor-shaped cell regions.

A snake visits cells in L-turns only: it enters a cell at one orientation,
alternates strictly inside the complete-bipartite cell, and leaves at the
other orientation, so inter-cell moves alternate between the two axes.  The
planner searches over cell visits (which neighbor next, how many node pairs
to consume, which indices) rather than over raw nodes, which keeps even long
tentacles cheap.  Three prunes do the real work: per-cell pair budgets,
bipartition-class counting against the fixed endpoints, and connectivity of
the cells that still hold uncovered nodes.
"""

from __future__ import annotations

import sys
from itertools import combinations
from typing import Iterator

from .chimera import H, V, ChimeraNode
from .grid import Coord


class ConstructionFailed(RuntimeError):
    """The snake planner exhausted its options; the element's end patterns or
    endpoints are inconsistent."""


_AXIS_STEPS = {V: ((1, 0), (-1, 0)), H: ((0, 1), (0, -1))}


def _node_class(cell: Coord, orient: int) -> int:
    return (cell[0] + cell[1] + orient) % 2


class _Region:
    """Mutable bookkeeping: unused node indices per cell and orientation."""

    def __init__(self, alive_by_cell: dict):
        self.unused: dict[Coord, dict[int, set[int]]] = {
            cell: {H: set(sets[H]), V: set(sets[V])} for cell, sets in alive_by_cell.items()
        }
        for cell, sets in self.unused.items():
            if len(sets[H]) != len(sets[V]):
                raise ConstructionFailed(
                    f"cell {cell} has {len(sets[H])} horizontal vs {len(sets[V])} vertical nodes"
                )
        self.class_count = [0, 0]
        for cell, sets in self.unused.items():
            for orient in (H, V):
                self.class_count[_node_class(cell, orient)] += len(sets[orient])

    def consume(self, node: ChimeraNode) -> None:
        self.unused[(node.col, node.row)][node.orient].remove(node.k)
        self.class_count[_node_class((node.col, node.row), node.orient)] -= 1

    def release(self, node: ChimeraNode) -> None:
        self.unused[(node.col, node.row)][node.orient].add(node.k)
        self.class_count[_node_class((node.col, node.row), node.orient)] += 1

    def total_unused(self) -> int:
        return self.class_count[0] + self.class_count[1]

    def live_cells(self) -> set[Coord]:
        return {cell for cell, sets in self.unused.items() if sets[H] or sets[V]}


def _classes_feasible(region: _Region, current: ChimeraNode, end: ChimeraNode) -> bool:
    """The rest of the path covers every unused node, starting adjacent to
    ``current`` and finishing at ``end``; class counts must fit that shape."""
    r = region.total_unused()
    if r == 0:
        return False
    ccur = _node_class((current.col, current.row), current.orient)
    cend = _node_class((end.col, end.row), end.orient)
    expected_last = (1 - ccur) if r % 2 == 1 else ccur
    if cend != expected_last:
        return False
    return region.class_count[1 - ccur] == (r + 1) // 2


def _region_connected(region: _Region, from_cell: Coord, end_cell: Coord) -> bool:
    live = region.live_cells()
    if not live:
        return True
    if end_cell not in live:
        return False
    allowed = live | {from_cell}
    seen = {from_cell}
    stack = [from_cell]
    while stack:
        x, y = stack.pop()
        for nxt in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nxt in allowed and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return live <= seen


def snake_path(
    alive_by_cell: dict,
    start: ChimeraNode,
    end: ChimeraNode,
    split_visits: bool = False,
    max_steps: int = 2_000_000,
) -> list[ChimeraNode]:
    """Hamiltonian path from ``start`` to ``end`` over every alive node.

    ``split_visits`` biases per-visit consumption toward half the cell, the
    natural shape for out-and-back loops; end-to-end crossings prefer to
    finish each cell in one pass.  The search is exhaustive either way, so
    the hint affects speed, never the outcome.  Raises ConstructionFailed
    when no such snake exists or the step budget runs out.
    """
    region = _Region(alive_by_cell)
    start_cell = (start.col, start.row)
    end_cell = (end.col, end.row)
    for node, label in ((start, "start"), (end, "end")):
        cell = (node.col, node.row)
        if cell not in region.unused or node.k not in region.unused[cell][node.orient]:
            raise ConstructionFailed(f"{label} node {node.name()} not alive in the region")
    if start == end:
        raise ConstructionFailed("degenerate endpoints")

    total = region.total_unused()
    region.consume(start)
    path = [start]
    state = _PlannerState(region, end, split_visits, max_steps)

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 2 * total + 1000))
    try:
        if state.extend(path):
            return path
    finally:
        sys.setrecursionlimit(old_limit)
    raise ConstructionFailed(f"no snake from {start.name()} to {end.name()} over {total} nodes")


class _PlannerState:
    def __init__(self, region: _Region, end: ChimeraNode, split_visits: bool, max_steps: int):
        self.region = region
        self.end = end
        self.end_cell = (end.col, end.row)
        self.split_visits = split_visits
        self.max_steps = max_steps
        self.steps = 0

    def _j_order(self, max_j: int) -> list[int]:
        if not self.split_visits:
            return list(range(max_j, 0, -1))
        half = (max_j + 1) // 2
        return sorted(range(1, max_j + 1), key=lambda j: (abs(j - half), -j))

    def extend(self, path: list[ChimeraNode]) -> bool:
        """Plan the visit that begins at path[-1], just consumed."""
        self.steps += 1
        if self.steps > self.max_steps:
            raise ConstructionFailed("snake planner budget exhausted")

        region = self.region
        end = self.end
        entry = path[-1]
        cell = (entry.col, entry.row)
        o = entry.orient
        oo = V if o == H else H
        unused_o = region.unused[cell][o]
        unused_oo = region.unused[cell][oo]
        end_here = self.end_cell == cell and end.orient == oo

        # Option 1: this is the last visit and it finishes on the end node.
        if end_here and end.k in unused_oo:
            j = len(unused_oo)
            if len(unused_o) == j - 1 and region.total_unused() == 2 * j - 1:
                mids_oo = sorted(k for k in unused_oo if k != end.k)
                mids_o = sorted(unused_o)
                for i in range(j - 1):
                    path.append(ChimeraNode(cell[0], cell[1], oo, mids_oo[i]))
                    path.append(ChimeraNode(cell[0], cell[1], o, mids_o[i]))
                path.append(end)
                return True

        # Option 2: consume j pairs here and move on through an exit index.
        max_j = min(len(unused_o) + 1, len(unused_oo))
        if max_j < 1:
            return False
        o_pool = sorted(unused_o)
        oo_pool = sorted(k for k in unused_oo if not (end_here and k == end.k))

        for j in self._j_order(max_j):
            if j - 1 > len(o_pool) or j > len(oo_pool):
                continue
            for o_mid in combinations(o_pool, j - 1):
                for oo_pick in combinations(oo_pool, j):
                    for exit_k in oo_pick:
                        oo_mid = [k for k in oo_pick if k != exit_k]
                        for dc, dr in _AXIS_STEPS[oo]:
                            nxt_cell = (cell[0] + dc, cell[1] + dr)
                            if nxt_cell not in region.unused:
                                continue
                            if exit_k not in region.unused[nxt_cell][oo]:
                                continue
                            nxt = ChimeraNode(nxt_cell[0], nxt_cell[1], oo, exit_k)
                            will_remain = region.total_unused() - 2 * j
                            if nxt == end:
                                if will_remain != 0:
                                    continue
                            elif will_remain == 0:
                                continue
                            seq: list[ChimeraNode] = []
                            for i in range(j - 1):
                                seq.append(ChimeraNode(cell[0], cell[1], oo, oo_mid[i]))
                                seq.append(ChimeraNode(cell[0], cell[1], o, o_mid[i]))
                            seq.append(ChimeraNode(cell[0], cell[1], oo, exit_k))
                            seq.append(nxt)
                            for n in seq:
                                region.consume(n)
                            path.extend(seq)
                            if nxt == end:
                                return True
                            if (
                                _classes_feasible(region, nxt, end)
                                and _region_connected(region, nxt_cell, self.end_cell)
                                and self.extend(path)
                            ):
                                return True
                            for n in reversed(seq):
                                region.release(n)
                            del path[-len(seq):]
        return False
