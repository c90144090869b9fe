"""Integer-grid primitives: parity, rectangles, strips, and tentacles.

Coordinates are plain ``(x, y)`` tuples on the infinite grid.  A grid vertex
is even when ``x + y`` is even.  Strips are width-2 rectangles; a tentacle is
a chain of alternately oriented strips overlapping in exactly two vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

Coord = tuple[int, int]

EVEN = 0
ODD = 1

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


def parity(coord: Coord) -> int:
    """0 for an even grid vertex (x + y even), 1 for an odd one."""
    x, y = coord
    return (x + y) % 2


def grid_adjacent(a: Coord, b: Coord) -> bool:
    """True when two grid vertices are joined by a grid edge (L1 distance 1)."""
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


@dataclass(frozen=True)
class Rect:
    """Rectangular grid graph given by two opposite corners (inclusive).

    Stored normalized: ``x0 <= x1`` and ``y0 <= y1``.  Corner order in the
    constructor is irrelevant.
    """

    x0: int
    y0: int
    x1: int
    y1: int

    @classmethod
    def from_corners(cls, a: Coord, b: Coord) -> "Rect":
        return cls(min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1]))

    @property
    def width(self) -> int:
        """Vertex count along x."""
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        """Vertex count along y."""
        return self.y1 - self.y0 + 1

    def vertices(self) -> Iterator[Coord]:
        for x in range(self.x0, self.x1 + 1):
            for y in range(self.y0, self.y1 + 1):
                yield (x, y)

    def vertex_set(self) -> frozenset[Coord]:
        return frozenset(self.vertices())

    def contains(self, c: Coord) -> bool:
        return self.x0 <= c[0] <= self.x1 and self.y0 <= c[1] <= self.y1

    def corners(self) -> tuple[Coord, Coord, Coord, Coord]:
        return ((self.x0, self.y0), (self.x1, self.y0), (self.x0, self.y1), (self.x1, self.y1))


@dataclass(frozen=True)
class GridStrip:
    """Width-2 rectangle with an orientation tag.

    A vertically oriented strip is 2 vertices wide in x; a horizontal one is
    2 wide in y.  The 2x2 strip may carry either tag.  ``length`` counts grid
    edges along the long axis, so the 2x2 strip has length 1.
    """

    rect: Rect
    orientation: str

    def __post_init__(self) -> None:
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"bad orientation {self.orientation!r}")
        w, h = self.rect.width, self.rect.height
        if self.orientation == VERTICAL:
            if w != 2 or h < 2:
                raise ValueError(f"vertical strip must be 2 wide and >=2 tall, got {w}x{h}")
        else:
            if h != 2 or w < 2:
                raise ValueError(f"horizontal strip must be 2 tall and >=2 wide, got {w}x{h}")

    @property
    def length(self) -> int:
        if self.orientation == VERTICAL:
            return self.rect.height - 1
        return self.rect.width - 1

    def vertices(self) -> Iterator[Coord]:
        return self.rect.vertices()

    def vertex_set(self) -> frozenset[Coord]:
        return self.rect.vertex_set()

    def end_pairs(self) -> tuple[frozenset[Coord], frozenset[Coord]]:
        """The two 2-vertex sides perpendicular to the long axis."""
        r = self.rect
        if self.orientation == VERTICAL:
            return (
                frozenset({(r.x0, r.y0), (r.x1, r.y0)}),
                frozenset({(r.x0, r.y1), (r.x1, r.y1)}),
            )
        return (
            frozenset({(r.x0, r.y0), (r.x0, r.y1)}),
            frozenset({(r.x1, r.y0), (r.x1, r.y1)}),
        )


class TentacleError(ValueError):
    """A strip sequence violates the tentacle attachment rules."""


@dataclass(frozen=True)
class GridTentacle:
    """Chain of alternately oriented strips, consecutive ones sharing 2 vertices.

    The shared pair is an end pair of the later strip, attached to the side of
    the earlier strip so that it reuses one of the earlier strip's end-pair
    vertices (the turn happens at the very end of the strip).
    """

    strips: tuple[GridStrip, ...]

    def __post_init__(self) -> None:
        validate_tentacle(self.strips)

    def vertex_set(self) -> frozenset[Coord]:
        out: set[Coord] = set()
        for s in self.strips:
            out |= s.vertex_set()
        return frozenset(out)


def validate_tentacle(strips: Sequence[GridStrip]) -> None:
    """Raise TentacleError when the strip chain is not a valid tentacle."""
    if not strips:
        raise TentacleError("tentacle needs at least one strip")
    for i in range(len(strips) - 1):
        s, t = strips[i], strips[i + 1]
        if s.orientation == t.orientation:
            raise TentacleError(f"strips {i} and {i + 1} share orientation {s.orientation}")
        overlap = s.vertex_set() & t.vertex_set()
        if len(overlap) != 2:
            raise TentacleError(
                f"strips {i} and {i + 1} overlap in {len(overlap)} vertices, expected 2"
            )
        if overlap not in t.end_pairs():
            raise TentacleError(f"overlap of strips {i},{i + 1} is not an end pair of strip {i + 1}")
        ea, eb = s.end_pairs()
        if not (overlap & ea) and not (overlap & eb):
            raise TentacleError(f"overlap of strips {i},{i + 1} misses the end of strip {i}")
