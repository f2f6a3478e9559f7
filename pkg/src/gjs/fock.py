"""Truncated Fock module over the bottomless algebra.

Sector ``b`` holds graded elements whose pieces all have exactly ``b`` bottom
strands. Creation by a one-bottom-strand element is the wedge product on the
left. Annihilation pairs the element with the leading bottom strand through the
algebra-valued inner product. The construction bends the remaining bottom
strands out of the way and then restores them, so it never calls the Walker
product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .graded import GradedAlgebra, GradedElement

__all__ = ["CreationSymbol", "FockModule", "FockVector", "DEFAULT_DEPTH"]

DEFAULT_DEPTH = 6


@dataclass(frozen=True)
class FockVector:
    """Sectors ``0 .. depth-1``; ``truncated`` records that creation overflowed the top sector."""

    depth: int
    sectors: Mapping[int, GradedElement] = field(default_factory=dict)
    truncated: bool = False

    def __post_init__(self) -> None:
        clean = {}
        for b, element in self.sectors.items():
            if not 0 <= b < self.depth:
                raise ValueError(f"sector {b} outside depth {self.depth}")
            if any(kb != b for kb, _, _ in element.terms):
                raise ValueError(f"sector {b} holds pieces with a different number of bottom strands")
            if not element.is_zero():
                clean[b] = element
        object.__setattr__(self, "sectors", clean)

    @classmethod
    def from_element(cls, element: GradedElement, depth: int = DEFAULT_DEPTH) -> FockVector:
        sectors: dict[int, GradedElement] = {}
        for b in {kb for kb, _, _ in element.terms}:
            sectors[b] = element.restrict(lambda kb, l, r, b=b: kb == b)
        return cls(depth, sectors)

    def sector(self, b: int) -> GradedElement:
        return self.sectors.get(b, GradedElement())

    def as_element(self) -> GradedElement:
        total = GradedElement()
        for element in self.sectors.values():
            total = total + element
        return total

    def is_zero(self) -> bool:
        return not self.sectors

    def __add__(self, other: FockVector) -> FockVector:
        if self.depth != other.depth:
            raise ValueError("depth mismatch")
        keys = set(self.sectors) | set(other.sectors)
        return FockVector(
            self.depth,
            {b: self.sector(b) + other.sector(b) for b in keys},
            self.truncated or other.truncated,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.depth == other.depth and self.sectors == other.sectors


@dataclass(frozen=True)
class CreationSymbol:
    """An element whose pieces all carry exactly one bottom strand."""

    xi: GradedElement

    def __post_init__(self) -> None:
        if self.xi.is_zero() or any(b != 1 for b, _, _ in self.xi.terms):
            raise ValueError("creation symbols need exactly one bottom strand in every piece")


class FockModule:
    def __init__(self, algebra: GradedAlgebra, depth: int = DEFAULT_DEPTH):
        if depth < 1:
            raise ValueError("depth must be positive")
        self.algebra = algebra
        self.depth = depth

    def vacuum(self) -> FockVector:
        return FockVector(self.depth, {0: self.algebra.empty()})

    def vector(self, element: GradedElement) -> FockVector:
        return FockVector.from_element(element, self.depth)

    def inner_product_a(self, xi: GradedElement, eta: GradedElement) -> GradedElement:
        """Algebra-valued inner product: join all bottom strands and the left strands.

        Pieces pair only when their bottom counts and left-strand counts agree;
        the value lies in the bottomless part, in ``V[0, r, r']``.
        """
        cat = self.algebra.category
        parts = []
        for (b1, l1, r1), m1 in xi.terms.items():
            mirrored = cat.mirror(m1)
            for (b2, l2, r2), m2 in eta.terms.items():
                if b1 != b2 or l1 != l2:
                    continue
                joined = cat.compose_all(
                    cat.tensor(cat.identity(r1), cat.cap(l1), cat.identity(r2)),
                    cat.tensor(mirrored, m2),
                    cat.cup(b1),
                )
                parts.append(((0, r1, r2), joined))
        return GradedElement.sum(parts)

    def inner(self, v: FockVector, w: FockVector) -> Fraction:
        """Scalar inner product ``phi`` of the algebra-valued one, summed over sectors."""
        return sum(
            (self.algebra.phi(self.inner_product_a(v.sector(b), w.sector(b))) for b in v.sectors),
            Fraction(0),
        )

    def create(self, symbol: CreationSymbol | GradedElement, v: FockVector) -> FockVector:
        xi = _symbol(symbol)
        sectors = {}
        truncated = v.truncated
        for b, element in v.sectors.items():
            image = self.algebra.wedge(xi, element)
            if image.is_zero():
                continue
            if b + 1 >= self.depth:
                truncated = True
                continue
            sectors[b + 1] = image
        return FockVector(self.depth, sectors, truncated)

    def annihilate(self, symbol: CreationSymbol | GradedElement, v: FockVector) -> FockVector:
        xi = _symbol(symbol)
        cat = self.algebra.category
        sectors = {}
        for b, element in v.sectors.items():
            if b == 0:
                continue
            parts = []
            for (_, l, r), m in element.terms.items():
                # Park the trailing b-1 bottom strands on the right, pair the leading one, restore.
                head = GradedElement.single((1, l, r + b - 1), cat.bend_right(m, b - 1))
                paired = self.inner_product_a(xi, head)
                for (_, rx, rr), pm in paired.terms.items():
                    parts.append(((b - 1, rx, rr - (b - 1)), cat.unbend_right(pm, b - 1)))
            image = GradedElement.sum(parts)
            if not image.is_zero():
                sectors[b - 1] = image
        return FockVector(self.depth, sectors, v.truncated)

    def field(self, symbol: CreationSymbol | GradedElement, v: FockVector) -> FockVector:
        """Creation plus annihilation."""
        return self.create(symbol, v) + self.annihilate(symbol, v)

    def left_action(self, a: GradedElement, v: FockVector) -> FockVector:
        """Bottomless elements act on every sector by the wedge product."""
        if a.max_bottom():
            raise ValueError("left action is by bottomless elements")
        return FockVector(
            self.depth,
            {b: self.algebra.wedge(a, element) for b, element in v.sectors.items()},
            v.truncated,
        )

    def identify_sectors(self, xi: GradedElement, eta: GradedElement) -> GradedElement:
        """The balanced tensor of two sectors, realized by wedging them together."""
        return self.algebra.wedge(xi, eta)


def _symbol(symbol: CreationSymbol | GradedElement) -> GradedElement:
    if isinstance(symbol, CreationSymbol):
        return symbol.xi
    return CreationSymbol(symbol).xi


def is_self_adjoint(algebra: GradedAlgebra, x: GradedElement) -> bool:
    return algebra.star(x) == x

