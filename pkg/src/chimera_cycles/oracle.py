"""Exact Hamiltonian-cycle search and minor-embedding verification.

The cycle search is a deterministic backtracking DFS over bitmask adjacency
with three prunes that keep corridor-like instances tractable:

  * availability: an unvisited vertex whose usable neighbor slots drop below
    2 kills the branch (degree-2 edge forcing falls out of the ordering),
  * connectivity: the unvisited region plus both open path ends must stay
    connected,
  * forced-move ordering: candidates with the fewest remaining options are
    tried first, so forced chains propagate immediately.

``None`` is only ever reported when the search space was exhausted; running
out of budget is a distinct Timeout outcome, never converted to ``None``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graphs import SimpleGraph

FOUND = "found"
NONE = "none"  # exhausted: certified non-Hamiltonian
TIMEOUT = "timeout"


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 200_000_000
    time_limit: float = 600.0

    def __post_init__(self) -> None:
        if self.node_limit <= 0 or self.time_limit <= 0:
            raise ValueError("budget limits must be positive")


@dataclass
class HamiltonResult:
    status: str
    cycles: list[list[int]] = field(default_factory=list)
    expanded: int = 0

    @property
    def cycle(self) -> Optional[list[int]]:
        return self.cycles[0] if self.cycles else None


def verify_hamiltonian_cycle(g: SimpleGraph, seq: Iterable[int]) -> bool:
    """True iff seq visits every vertex exactly once and closes along edges."""
    order = list(seq)
    if len(order) != g.n or g.n < 3:
        return False
    if len(set(order)) != g.n:
        return False
    return all(g.has_edge(order[i], order[(i + 1) % g.n]) for i in range(g.n))


def verify_hamiltonian_path(g: SimpleGraph, seq: Iterable[int]) -> bool:
    order = list(seq)
    if len(order) != g.n or g.n < 1:
        return False
    if len(set(order)) != g.n:
        return False
    return all(g.has_edge(order[i], order[i + 1]) for i in range(len(order) - 1))


def canonical_cycle(seq: Iterable[int]) -> tuple[int, ...]:
    """Lexicographically smallest rotation/reflection; cycles compare equal
    regardless of starting point and direction."""
    order = list(seq)
    n = len(order)
    best: Optional[tuple[int, ...]] = None
    for direction in (order, order[::-1]):
        for s in range(n):
            cand = tuple(direction[s:] + direction[:s])
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def find_hamiltonian_cycle(g: SimpleGraph, budget: SearchBudget = SearchBudget()) -> HamiltonResult:
    return _search(g, budget, limit=1)


def find_hamiltonian_cycles(
    g: SimpleGraph, budget: SearchBudget = SearchBudget(), limit: int = 1
) -> HamiltonResult:
    """Up to ``limit`` distinct cycles (canonical forms deduplicated).

    status NONE means the whole space was exhausted, so the returned cycles
    are all that exist.
    """
    return _search(g, budget, limit=limit)


def _search(g: SimpleGraph, budget: SearchBudget, limit: int) -> HamiltonResult:
    n = g.n
    if n < 3 or not g.is_connected() or any(g.degree(v) < 2 for v in g.vertices()):
        return HamiltonResult(NONE)

    adj_mask = [0] * n
    for v in range(n):
        for w in g.neighbors(v):
            adj_mask[v] |= 1 << w
    adj_sets = [list(g.neighbors(v)) for v in range(n)]
    full = (1 << n) - 1
    start = 0
    start_bit = 1

    deadline = time.monotonic() + budget.time_limit
    expanded = 0
    found: list[list[int]] = []
    seen_canon: set[tuple[int, ...]] = set()

    def candidates(head: int, visited: int) -> Optional[list[int]]:
        """Extensions of the path ordered most-constrained-first.

        Returns None when some unvisited vertex can no longer reach degree 2,
        or when the open region is disconnected.
        """
        unvisited = full & ~visited
        avail_pool = unvisited | (1 << head) | start_bit
        cands: list[tuple[int, int]] = []
        rest = unvisited
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            slots = (adj_mask[v] & avail_pool).bit_count()
            if v != head and slots < 2:
                return None
            if adj_mask[head] >> v & 1:
                cands.append((slots, v))
        if unvisited:
            frontier = 1 << (unvisited.bit_length() - 1)
            reach = frontier
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    f ^= low
                    nxt |= adj_mask[low.bit_length() - 1]
                frontier = nxt & (unvisited | start_bit | (1 << head)) & ~reach
                reach |= frontier
            if (reach & unvisited) != unvisited or not (reach >> start & 1) or not (reach >> head & 1):
                return None
        cands.sort()
        return [v for _, v in cands]

    path = [start]
    visited = 1
    iter_stack: list[list[int]] = []
    first = candidates(start, visited)
    iter_stack.append(first if first is not None else [])

    while iter_stack:
        expanded += 1
        if expanded % 2048 == 0 and time.monotonic() > deadline:
            return HamiltonResult(TIMEOUT, found, expanded)
        if expanded > budget.node_limit:
            return HamiltonResult(TIMEOUT, found, expanded)

        options = iter_stack[-1]
        if not options:
            iter_stack.pop()
            visited ^= 1 << path.pop()
            continue
        v = options.pop(0)
        path.append(v)
        visited |= 1 << v
        if visited == full:
            if adj_mask[v] >> start & 1:
                canon = canonical_cycle(path)
                if canon not in seen_canon:
                    seen_canon.add(canon)
                    found.append(list(path))
                    if len(found) >= limit:
                        return HamiltonResult(FOUND, found, expanded)
            visited ^= 1 << path.pop()
            continue
        nxt = candidates(v, visited)
        if nxt is None:
            visited ^= 1 << path.pop()
            continue
        iter_stack.append(nxt)

    status = FOUND if found else NONE
    return HamiltonResult(status, found, expanded)


def find_hamiltonian_path(
    g: SimpleGraph, start: int, target: int, budget: SearchBudget = SearchBudget()
) -> HamiltonResult:
    """Hamiltonian path with both endpoints fixed; same prunes as the cycle
    search, so NONE certifies there is no such path."""
    n = g.n
    if n < 1 or start == target or not g.is_connected():
        return HamiltonResult(NONE)
    if n == 2:
        ok = g.has_edge(start, target)
        return HamiltonResult(FOUND, [[start, target]]) if ok else HamiltonResult(NONE)

    adj_mask = [0] * n
    for v in range(n):
        for w in g.neighbors(v):
            adj_mask[v] |= 1 << w
    full = (1 << n) - 1
    target_bit = 1 << target

    deadline = time.monotonic() + budget.time_limit
    expanded = 0

    def candidates(head: int, visited: int) -> Optional[list[int]]:
        unvisited = full & ~visited
        avail_pool = unvisited | (1 << head)
        cands: list[tuple[int, int]] = []
        rest = unvisited
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            slots = (adj_mask[v] & avail_pool).bit_count()
            if v != target and slots < 2:
                return None
            if v == target and slots < 1:
                return None
            if adj_mask[head] >> v & 1:
                if v == target and unvisited != target_bit:
                    continue  # target only enterable as the last vertex
                cands.append((slots, v))
        if unvisited:
            frontier = 1 << (unvisited.bit_length() - 1)
            reach = frontier
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    f ^= low
                    nxt |= adj_mask[low.bit_length() - 1]
                frontier = nxt & (unvisited | (1 << head)) & ~reach
                reach |= frontier
            if (reach & unvisited) != unvisited or not (reach >> head & 1):
                return None
        cands.sort()
        return [v for _, v in cands]

    path = [start]
    visited = 1 << start
    first = candidates(start, visited)
    iter_stack = [first if first is not None else []]

    while iter_stack:
        expanded += 1
        if expanded % 2048 == 0 and time.monotonic() > deadline:
            return HamiltonResult(TIMEOUT, [], expanded)
        if expanded > budget.node_limit:
            return HamiltonResult(TIMEOUT, [], expanded)
        options = iter_stack[-1]
        if not options:
            iter_stack.pop()
            visited ^= 1 << path.pop()
            continue
        v = options.pop(0)
        path.append(v)
        visited |= 1 << v
        if visited == full:
            if v == target:
                return HamiltonResult(FOUND, [list(path)], expanded)
            visited ^= 1 << path.pop()
            continue
        nxt = candidates(v, visited)
        if nxt is None:
            visited ^= 1 << path.pop()
            continue
        iter_stack.append(nxt)
    return HamiltonResult(NONE, [], expanded)


def naive_hamiltonian_exists(g: SimpleGraph) -> bool:
    """Permutation-based reference check, usable up to ~10 vertices."""
    from itertools import permutations

    if g.n < 3:
        return False
    rest = list(range(1, g.n))
    for perm in permutations(rest):
        order = (0,) + perm
        if all(g.has_edge(order[i], order[(i + 1) % g.n]) for i in range(g.n)):
            return True
    return False


@dataclass(frozen=True)
class EmbeddingViolation:
    kind: str
    detail: str


def verify_minor_embedding(
    g: SimpleGraph, h: SimpleGraph, phi: dict[int, set[int]]
) -> tuple[bool, list[EmbeddingViolation]]:
    """Check that phi maps g's vertices to disjoint connected subgraphs of h
    with an h-edge between the images of every g-edge."""
    violations: list[EmbeddingViolation] = []
    seen: dict[int, int] = {}
    for v in g.vertices():
        image = phi.get(v)
        if not image:
            violations.append(EmbeddingViolation("empty_image", f"vertex {v}"))
            continue
        for node in image:
            if not (0 <= node < h.n):
                violations.append(EmbeddingViolation("out_of_range", f"{v} -> {node}"))
            elif node in seen:
                violations.append(
                    EmbeddingViolation("overlap", f"node {node} shared by {seen[node]} and {v}")
                )
            else:
                seen[node] = v
        nodes = [u for u in image if 0 <= u < h.n]
        if nodes:
            reached = {nodes[0]}
            stack = [nodes[0]]
            image_set = set(nodes)
            while stack:
                u = stack.pop()
                for w in h.neighbors(u):
                    if w in image_set and w not in reached:
                        reached.add(w)
                        stack.append(w)
            if reached != image_set:
                violations.append(EmbeddingViolation("disconnected_image", f"vertex {v}"))
    for u, v in g.edges():
        iu, iv = phi.get(u, set()), phi.get(v, set())
        if not any(h.has_edge(a, b) for a in iu for b in iv if 0 <= a < h.n and 0 <= b < h.n):
            violations.append(EmbeddingViolation("missing_edge", f"edge ({u},{v})"))
    return (not violations, violations)


def minor_test_via_cycle(h: SimpleGraph, budget: SearchBudget = SearchBudget()) -> HamiltonResult:
    """Cycle-graph minor containment reduces to Hamiltonicity of h itself."""
    if h.n < 3:
        raise ValueError("need at least 3 vertices")
    return find_hamiltonian_cycle(h, budget)
