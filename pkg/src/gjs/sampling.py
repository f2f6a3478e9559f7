"""Seeded random morphisms and graded elements with small integer coefficients."""

from __future__ import annotations

import random

from . import planar
from .bimodules import CornerElement
from .category import Morphism
from .graded import GradedElement

COEFFS = (-2, -1, 0, 1, 2)


class Sampler:
    def __init__(self, seed: int | str, max_terms: int = 3):
        self.rng = random.Random(seed)
        self.max_terms = max_terms

    def coeff(self, nonzero: bool = False) -> int:
        while True:
            c = self.rng.choice(COEFFS)
            if c or not nonzero:
                return c

    def pairing(self, bottom: int, top: int) -> planar.PlanarPairing:
        return self.rng.choice(planar.enumerate_nc_pairings(bottom + top, bottom=bottom))

    def morphism(self, source: int, target: int, nonzero: bool = True) -> Morphism:
        """Every basis diagram gets a coefficient when the hom space is small, otherwise a few do."""
        basis = planar.enumerate_nc_pairings(source + target, bottom=source)
        while True:
            if len(basis) <= 5:
                terms = {p: self.coeff() for p in basis}
            else:
                terms = {self.rng.choice(basis): self.coeff() for _ in range(self.max_terms)}
            f = Morphism(source, target, terms)
            if not (nonzero and f.is_zero()):
                return f

    def endomorphism(self, max_level: int) -> Morphism:
        n = self.rng.randint(0, max_level)
        return self.morphism(n, n)

    def composable(self, max_level: int) -> tuple[Morphism, Morphism]:
        """``(f, g)`` with ``f ∘ g`` defined, all levels at most ``max_level``."""
        a = self.rng.randint(0, max_level)
        b = self.rng.choice([k for k in range(max_level + 1) if (a + k) % 2 == 0])
        c = self.rng.choice([k for k in range(max_level + 1) if (b + k) % 2 == 0])
        return self.morphism(b, c), self.morphism(a, b)

    def key(self, bottoms, lefts, rights) -> tuple[int, int, int]:
        while True:
            b, l, r = self.rng.choice(bottoms), self.rng.choice(lefts), self.rng.choice(rights)
            if (b + l + r) % 2 == 0:
                return b, l, r

    def element(self, max_b: int = 3, max_l: int = 3, max_r: int = 3, *, bottoms=None, lefts=None,
                rights=None, terms: int | None = None) -> GradedElement:
        """Nonzero sum of a few random diagrams; key ranges default to ``0..max``."""
        bottoms = bottoms if bottoms is not None else range(max_b + 1)
        lefts = lefts if lefts is not None else range(max_l + 1)
        rights = rights if rights is not None else range(max_r + 1)
        count = terms or self.max_terms
        while True:
            parts = []
            for _ in range(count):
                b, l, r = self.key(list(bottoms), list(lefts), list(rights))
                parts.append(((b, l, r), Morphism.diagram(self.pairing(b, l + r), self.coeff())))
            x = GradedElement.sum(parts)
            if not x.is_zero():
                return x

    def corner(self, l: int, r: int, max_b: int = 3, terms: int | None = None) -> CornerElement:
        bottoms = [b for b in range(max_b + 1) if (b + l + r) % 2 == 0]
        if not bottoms:
            bottoms = [max_b + 1]
        return CornerElement((l, r), self.element(bottoms=bottoms, lefts=[l], rights=[r], terms=terms))

    def level_zero(self, max_b: int = 3, terms: int | None = None) -> GradedElement:
        return self.corner(0, 0, max_b=max_b, terms=terms).payload

    def bottomless(self, level: int, terms: int | None = None) -> GradedElement:
        return self.element(bottoms=[0], lefts=range(level + 1), rights=range(level + 1), terms=terms)

    def self_adjoint_symbol(self, star, max_l: int = 3, max_r: int = 3) -> GradedElement:
        """``x + x*`` for a random one-bottom-strand ``x``; ``star`` is the involution."""
        while True:
            x = self.element(bottoms=[1], lefts=range(max_l + 1), rights=range(max_r + 1))
            symmetric = x + star(x)
            if not symmetric.is_zero():
                return symmetric
