"""Non-crossing pairings of boundary points on a rectangle.

A diagram has ``bottom`` points along its lower edge and ``top`` points along
its upper edge. Points are indexed ``0 .. bottom-1`` for the bottom row (left to
right) followed by ``bottom .. bottom+top-1`` for the top row (left to right).
Walking around the boundary counter-clockwise visits the bottom row left to
right and then the top row right to left; a pairing is planar exactly when no
two of its chords cross in that cyclic order.

Everything else in the package reduces to the two gluing primitives here:
:func:`glue_vertical` (stacking, with closed loops counted) and
:func:`juxtapose` (side by side).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "PlanarPairing",
    "cap",
    "cup",
    "enumerate_nc_pairings",
    "glue_vertical",
    "identity",
    "juxtapose",
    "line_matchings",
]

_CACHE = 1 << 18


@dataclass(frozen=True, order=True)
class PlanarPairing:
    """A perfect non-crossing matching of ``bottom + top`` boundary points.

    ``match[i]`` is the partner of point ``i``.
    """

    bottom: int
    top: int
    match: tuple[int, ...]

    def __post_init__(self) -> None:
        size = self.bottom + self.top
        if self.bottom < 0 or self.top < 0:
            raise ValueError("point counts must be non-negative")
        if size % 2:
            raise ValueError(f"odd boundary: {size} points cannot be paired")
        if len(self.match) != size:
            raise ValueError(f"match has length {len(self.match)}, expected {size}")
        for i, j in enumerate(self.match):
            if not 0 <= j < size or j == i or self.match[j] != i:
                raise ValueError(f"match is not a fixed-point-free involution at {i}")
        if not _is_planar(self.bottom, self.top, self.match):
            raise ValueError("pairing has crossing chords")

    @property
    def size(self) -> int:
        return self.bottom + self.top

    def pairs(self) -> list[tuple[int, int]]:
        """Chords as ``(i, j)`` with ``i < j``, sorted."""
        return sorted((i, j) for i, j in enumerate(self.match) if i < j)

    def is_bottom(self, point: int) -> bool:
        return point < self.bottom

    def mirror(self) -> PlanarPairing:
        """Reflect left-right."""
        return _mirror(self)

    def flip(self) -> PlanarPairing:
        """Reflect top-bottom; the top row becomes the bottom row."""
        return _flip(self)

    @classmethod
    def from_pairs(cls, bottom: int, top: int, pairs: Sequence[Sequence[int]]) -> PlanarPairing:
        size = bottom + top
        match = [-1] * size
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size) or match[i] != -1 or match[j] != -1 or i == j:
                raise ValueError(f"invalid chord ({i}, {j})")
            match[i], match[j] = j, i
        if -1 in match:
            raise ValueError("pairing leaves points unmatched")
        return cls(bottom, top, tuple(match))


def _trusted(bottom: int, top: int, match: tuple[int, ...]) -> PlanarPairing:
    # Gluing outputs are planar by construction; skip validation on the hot path.
    pairing = object.__new__(PlanarPairing)
    object.__setattr__(pairing, "bottom", bottom)
    object.__setattr__(pairing, "top", top)
    object.__setattr__(pairing, "match", match)
    return pairing


def _circle_position(point: int, bottom: int, top: int) -> int:
    if point < bottom:
        return point
    return bottom + (top - 1 - (point - bottom))


def _circle_point(position: int, bottom: int, top: int) -> int:
    if position < bottom:
        return position
    return bottom + (top - 1 - (position - bottom))


def _is_planar(bottom: int, top: int, match: Sequence[int]) -> bool:
    size = bottom + top
    stack: list[int] = []
    for position in range(size):
        point = _circle_point(position, bottom, top)
        partner_position = _circle_position(match[point], bottom, top)
        if partner_position > position:
            stack.append(position)
        elif not stack or stack.pop() != partner_position:
            return False
    return True


def line_matchings(points: int) -> list[tuple[tuple[int, int], ...]]:
    """All non-crossing perfect matchings of ``points`` collinear points.

    Returned as sorted chord tuples, in lexicographic order.
    """
    if points < 0:
        raise ValueError("number of points must be non-negative")
    if points % 2:
        raise ValueError(f"odd boundary: {points} points cannot be paired")
    return list(_line_matchings(0, points))


@lru_cache(maxsize=None)
def _line_matchings(start: int, stop: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if start >= stop:
        return ((),)
    result = []
    for partner in range(start + 1, stop, 2):
        for inside in _line_matchings(start + 1, partner):
            for outside in _line_matchings(partner + 1, stop):
                result.append(((start, partner),) + inside + outside)
    return tuple(sorted(tuple(sorted(chords)) for chords in result))


def enumerate_nc_pairings(points: int, bottom: int = 0) -> list[PlanarPairing]:
    """Every planar pairing with ``points`` boundary points, ``bottom`` of them below.

    The count is the Catalan number ``C(points/2)``; ordering is lexicographic in
    the chord list.
    """
    if not 0 <= bottom <= points:
        raise ValueError("bottom must lie between 0 and the number of points")
    return list(_enumerate(points, bottom))


@lru_cache(maxsize=64)
def _enumerate(points: int, bottom: int) -> tuple[PlanarPairing, ...]:
    top = points - bottom
    out = []
    for chords in line_matchings(points):
        match = [0] * points
        for a, b in chords:
            i, j = _circle_point(a, bottom, top), _circle_point(b, bottom, top)
            match[i], match[j] = j, i
        out.append(_trusted(bottom, top, tuple(match)))
    out.sort(key=PlanarPairing.pairs)
    return tuple(out)


@lru_cache(maxsize=_CACHE)
def _mirror(p: PlanarPairing) -> PlanarPairing:
    def image(i: int) -> int:
        return p.bottom - 1 - i if i < p.bottom else p.bottom + (p.top - 1 - (i - p.bottom))

    match = [0] * p.size
    for i, j in enumerate(p.match):
        match[image(i)] = image(j)
    return _trusted(p.bottom, p.top, tuple(match))


@lru_cache(maxsize=_CACHE)
def _flip(p: PlanarPairing) -> PlanarPairing:
    def image(i: int) -> int:
        return p.top + i if i < p.bottom else i - p.bottom

    match = [0] * p.size
    for i, j in enumerate(p.match):
        match[image(i)] = image(j)
    return _trusted(p.top, p.bottom, tuple(match))


@lru_cache(maxsize=_CACHE)
def glue_vertical(upper: PlanarPairing, lower: PlanarPairing) -> tuple[PlanarPairing, int]:
    """Stack ``upper`` on top of ``lower``; return the glued pairing and loop count.

    The top row of ``lower`` is identified with the bottom row of ``upper``.
    """
    if upper.bottom != lower.top:
        raise ValueError(
            f"cannot glue: upper diagram has {upper.bottom} bottom points, "
            f"lower diagram has {lower.top} top points"
        )
    offset = lower.size
    parent = list(range(offset + upper.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for i, j in enumerate(lower.match):
        if i < j:
            union(i, j)
    for i, j in enumerate(upper.match):
        if i < j:
            union(offset + i, offset + j)
    for k in range(upper.bottom):
        union(lower.bottom + k, offset + k)

    # Outer points: lower's bottom row and upper's top row.
    outer = list(range(lower.bottom)) + [offset + upper.bottom + j for j in range(upper.top)]
    new_index = {node: idx for idx, node in enumerate(outer)}
    ends: dict[int, list[int]] = {}
    for node in outer:
        ends.setdefault(find(node), []).append(node)
    match = [0] * len(outer)
    for a, b in ends.values():
        match[new_index[a]], match[new_index[b]] = new_index[b], new_index[a]

    roots = {find(x) for x in range(len(parent))}
    loops = len(roots) - len(ends)
    return _trusted(lower.bottom, upper.top, tuple(match)), loops


@lru_cache(maxsize=_CACHE)
def juxtapose(left: PlanarPairing, right: PlanarPairing) -> PlanarPairing:
    """Place ``left`` and ``right`` side by side."""
    bottom = left.bottom + right.bottom
    top = left.top + right.top

    def left_image(i: int) -> int:
        return i if i < left.bottom else bottom + (i - left.bottom)

    def right_image(i: int) -> int:
        return left.bottom + i if i < right.bottom else bottom + left.top + (i - right.bottom)

    match = [0] * (bottom + top)
    for i, j in enumerate(left.match):
        match[left_image(i)] = left_image(j)
    for i, j in enumerate(right.match):
        match[right_image(i)] = right_image(j)
    return _trusted(bottom, top, tuple(match))


@lru_cache(maxsize=None)
def identity(strands: int) -> PlanarPairing:
    """Vertical through-strands."""
    match = tuple(list(range(strands, 2 * strands)) + list(range(strands)))
    return _trusted(strands, strands, match)


@lru_cache(maxsize=None)
def cup(strands: int) -> PlanarPairing:
    """Nested rainbow of ``strands`` cups with ``2*strands`` top points."""
    size = 2 * strands
    return _trusted(0, size, tuple(size - 1 - i for i in range(size)))


@lru_cache(maxsize=None)
def cap(strands: int) -> PlanarPairing:
    """Nested rainbow of caps; the vertical flip of :func:`cup`."""
    size = 2 * strands
    return _trusted(size, 0, tuple(size - 1 - i for i in range(size)))


def iter_chords(p: PlanarPairing) -> Iterator[tuple[int, int]]:
    for i, j in enumerate(p.match):
        if i < j:
            yield i, j
