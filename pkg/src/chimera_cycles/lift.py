"""Cycle transfer between an instance graph and its composed hardware graph.

Lifting walks the instance cycle vertex by vertex: each vertex element is
crossed by one of its stored path certificates, every cycle edge's corridor
is crossed end to end, and every unused edge's corridor is absorbed as a
detour attached at its even endpoint.  Extraction goes the other way without
assuming anything about how a cycle was found: a corridor whose odd-side
bridge is used was crossed, every other corridor was entered and left from
the even side, and the crossed edges alone must reconstruct a Hamiltonian
cycle of the instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .chimera import ChimeraNode, nodes_adjacent
from .compose import BrokenChimera, TentacleElement
from .gadget import CASES, VertexGadget, Witness, rotate_offset
from .graphs import SimpleGraph
from .instance import Edge, norm_edge
from .oracle import canonical_cycle
from .paths import snake_path


class LiftError(ValueError):
    pass


class InconsistentUsage(LiftError):
    pass


class TriangleCollapse(LiftError):
    pass


@dataclass(frozen=True)
class TraversalPlan:
    """Which corridors are crossed and where each detour loop attaches."""

    cross_edges: frozenset
    loop_at: dict  # even vertex -> odd neighbor across the unused edge

    @classmethod
    def from_cycle(cls, composed: BrokenChimera, cycle: Sequence[int]) -> "TraversalPlan":
        b = composed.instance
        g = b.graph
        n = g.n
        if len(cycle) != n or len(set(cycle)) != n:
            raise LiftError("not a Hamiltonian vertex sequence")
        cross = set()
        for i in range(n):
            u, v = cycle[i], cycle[(i + 1) % n]
            if not g.has_edge(u, v):
                raise LiftError(f"cycle uses a non-edge ({u},{v})")
            cross.add(norm_edge(u, v))
        loop_at: dict[int, int] = {}
        for edge in (norm_edge(u, v) for u, v in g.edges()):
            if edge in cross:
                continue
            even_v = b.even_endpoint(edge)
            if even_v in loop_at:
                raise LiftError(f"vertex {even_v} would host two detour loops")
            loop_at[even_v] = b.odd_endpoint(edge)
        return cls(frozenset(cross), loop_at)


def vertex_path(gadget: VertexGadget, case: str) -> Witness:
    """Stored certificate for one of the six cases, in canonical offsets."""
    if case not in CASES:
        raise LiftError(f"unknown case {case!r}")
    return gadget.witnesses[case]


def cross_path(elem: TentacleElement) -> list[ChimeraNode]:
    """Hamiltonian path over the corridor element from the odd-side bridge
    node to the even-side one."""
    return snake_path(elem.alive_by_cell, elem.t_odd, elem.t_even, split_visits=False)


def return_loop(elem: TentacleElement) -> list[ChimeraNode]:
    """Hamiltonian path over the corridor element between the two even-side
    bridge nodes: the detour covering an unused edge's corridor."""
    return snake_path(elem.alive_by_cell, elem.t_even, elem.t_even_re, split_visits=True)


def _case_label(pair: tuple[int, int], port: Optional[int]) -> str:
    for label, (p, d) in CASES.items():
        if p == pair and d == port:
            return label
    raise LiftError(f"no case for ports {pair} with detour {port}")


def _place(elem_base: tuple, rotation: int, node: ChimeraNode) -> ChimeraNode:
    off = rotate_offset(node, rotation)
    return ChimeraNode(elem_base[0] + off.col, elem_base[1] + off.row, off.orient, off.k)


def gadget_traversal(
    composed: BrokenChimera,
    gadget: VertexGadget,
    v: int,
    from_neighbor: int,
    to_neighbor: int,
    loop_neighbor: Optional[int],
) -> list[ChimeraNode]:
    """Path through v's element from the entry facing ``from_neighbor`` to
    the entry facing ``to_neighbor``, absorbing the detour loop if any."""
    velem = composed.vertex_elements[v]

    def port_of(w: int) -> int:
        eelem = composed.edge_elements[norm_edge(v, w)]
        d = eelem.dir_even if v == eelem.even_vertex else eelem.dir_odd
        return velem.dir_port[d]

    p_from, p_to = port_of(from_neighbor), port_of(to_neighbor)
    p_loop = port_of(loop_neighbor) if loop_neighbor is not None else None
    pair = (min(p_from, p_to), max(p_from, p_to))
    witness = vertex_path(gadget, _case_label(pair, p_loop))

    segments = [
        [_place(velem.base, velem.rotation, n) for n in seg] for seg in witness.segments
    ]
    if len(segments) == 1:
        full = segments[0]
    else:
        loop_edge = norm_edge(v, loop_neighbor)
        eelem = composed.edge_elements[loop_edge]
        if eelem.even_vertex != v:
            raise LiftError(f"detour for edge {loop_edge} must attach at its even endpoint")
        loop = return_loop(eelem)
        full = segments[0] + loop + segments[1]
    if full[0] != velem.u_nodes[_dir_of(composed, v, from_neighbor)]:
        full = full[::-1]
    return full


def _dir_of(composed: BrokenChimera, v: int, w: int) -> str:
    eelem = composed.edge_elements[norm_edge(v, w)]
    return eelem.dir_even if v == eelem.even_vertex else eelem.dir_odd


def verify_chimera_cycle(composed: BrokenChimera, seq: Sequence[ChimeraNode]) -> bool:
    """Hamiltonian cycle over the composed alive node set, edges checked
    against the (possibly augmented) topology rule."""
    alive = composed.alive
    if len(seq) != len(alive) or set(seq) != alive:
        return False
    aug = composed.topology.augmented
    return all(
        nodes_adjacent(seq[i], seq[(i + 1) % len(seq)], augmented=aug) for i in range(len(seq))
    )


def lift_cycle(
    composed: BrokenChimera, cycle: Sequence[int], gadget: VertexGadget
) -> list[ChimeraNode]:
    """Hamiltonian cycle of the composed graph induced by an instance cycle."""
    plan = TraversalPlan.from_cycle(composed, cycle)
    n = len(cycle)
    out: list[ChimeraNode] = []
    for i, v in enumerate(cycle):
        prev_v = cycle[(i - 1) % n]
        next_v = cycle[(i + 1) % n]
        out.extend(gadget_traversal(composed, gadget, v, prev_v, next_v, plan.loop_at.get(v)))
        elem = composed.edge_elements[norm_edge(v, next_v)]
        crossing = cross_path(elem)
        if v != elem.odd_vertex:
            crossing = crossing[::-1]
        out.extend(crossing)
    if not verify_chimera_cycle(composed, out):
        raise LiftError("lifted sequence failed verification; construction bug")
    return out


def classify_bridge_usage(
    composed: BrokenChimera, seq: Sequence[ChimeraNode]
) -> dict:
    """Per instance edge: 'cross' when the odd-side bridge is on the cycle,
    'return' otherwise; sanity-checks the used-bridge count."""
    edge_pairs = set()
    m = len(seq)
    for i in range(m):
        edge_pairs.add(frozenset((seq[i], seq[(i + 1) % m])))
    usage = {}
    for edge, br in composed.bridges.items():
        used = [pair for pair in br.all_pairs() if frozenset(pair) in edge_pairs]
        odd_used = frozenset(br.odd_entry) in edge_pairs
        if len(used) != 2:
            raise InconsistentUsage(
                f"edge {edge}: {len(used)} of 3 bridges used, expected exactly 2"
            )
        usage[edge] = "cross" if odd_used else "return"
    return usage


def extract_cycle(composed: BrokenChimera, seq: Sequence[ChimeraNode]) -> list[int]:
    """Hamiltonian cycle of the instance graph recovered from any Hamiltonian
    cycle of the composed graph."""
    if not verify_chimera_cycle(composed, seq):
        raise InconsistentUsage("input is not a Hamiltonian cycle of the composed graph")
    usage = classify_bridge_usage(composed, seq)
    g = composed.instance.graph
    cross = [e for e, kind in usage.items() if kind == "cross"]
    deg = [0] * g.n
    adj: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for u, v in cross:
        deg[u] += 1
        deg[v] += 1
        adj[u].append(v)
        adj[v].append(u)
    if any(d != 2 for d in deg):
        raise InconsistentUsage(f"crossed edges give degrees {deg}, expected all 2")
    cycle = [0, adj[0][0]]
    while True:
        a, b2 = cycle[-2], cycle[-1]
        nxt = adj[b2][0] if adj[b2][0] != a else adj[b2][1]
        if nxt == cycle[0]:
            break
        cycle.append(nxt)
    if len(cycle) != g.n:
        raise InconsistentUsage("crossed edges form more than one cycle")
    return cycle


def cycles_equal(a: Iterable[int], b: Iterable[int]) -> bool:
    return canonical_cycle(a) == canonical_cycle(b)


@dataclass(frozen=True)
class ContractionResult:
    graph: SimpleGraph
    cycle: Optional[tuple[int, ...]]
    vertex_map: tuple[int, ...]  # original vertex -> new vertex


def contract_along(
    g: SimpleGraph, cycle: Optional[Sequence[int]], path: Sequence[int]
) -> ContractionResult:
    """Successively contract the edges of ``path`` into a single vertex.

    Parallel edges merge and loops vanish, so the result stays simple.  When
    the path's edges all lie on the given Hamiltonian cycle, the contracted
    cycle is again Hamiltonian.  Contracting when only three vertices remain
    collapses the triangle to an edge, which is refused.
    """
    if len(path) < 2:
        raise LiftError("path must contain at least one edge")
    for a, b2 in zip(path, path[1:]):
        if not g.has_edge(a, b2):
            raise LiftError(f"path edge ({a},{b2}) not in graph")
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    remaining = g.n
    for a, b2 in zip(path, path[1:]):
        ra, rb = find(a), find(b2)
        if ra == rb:
            continue
        if remaining <= 3:
            raise TriangleCollapse("contracting a triangle collapses it to a single edge")
        parent[max(ra, rb)] = min(ra, rb)
        remaining -= 1

    reps = sorted({find(v) for v in range(g.n)})
    new_index = {r: i for i, r in enumerate(reps)}
    vertex_map = tuple(new_index[find(v)] for v in range(g.n))
    edges = set()
    for u, v in g.edges():
        nu, nv = vertex_map[u], vertex_map[v]
        if nu != nv:
            edges.add((min(nu, nv), max(nu, nv)))
    new_graph = SimpleGraph(len(reps), sorted(edges))

    new_cycle: Optional[tuple[int, ...]] = None
    if cycle is not None:
        mapped = [vertex_map[v] for v in cycle]
        collapsed: list[int] = []
        for x in mapped:
            if not collapsed or collapsed[-1] != x:
                collapsed.append(x)
        while len(collapsed) > 1 and collapsed[0] == collapsed[-1]:
            collapsed.pop()
        if len(set(collapsed)) != len(collapsed) or len(collapsed) != new_graph.n:
            raise LiftError("contracted sequence is no longer a Hamiltonian cycle")
        for i in range(len(collapsed)):
            if not new_graph.has_edge(collapsed[i], collapsed[(i + 1) % len(collapsed)]):
                raise LiftError("contracted sequence is no longer a cycle")
        new_cycle = tuple(collapsed)
    return ContractionResult(new_graph, new_cycle, vertex_map)
