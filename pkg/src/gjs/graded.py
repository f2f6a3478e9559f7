"""The graded algebra built from Temperley-Lieb boxes.

A diagram in ``V[b, l, r]`` is a Temperley-Lieb morphism with ``b`` bottom
strands and ``l + r`` top strands, the first ``l`` read as left strands and the
last ``r`` as right strands. A :class:`GradedElement` is a finite sum of such
pieces.

Two products live here. :meth:`GradedAlgebra.wedge` caps the right strands of
the first factor against the left strands of the second. The Walker product
:meth:`GradedAlgebra.walker` additionally sums over joining bottom strands in
the middle.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import planar
from .category import (
    Morphism,
    Scalar,
    TemperleyLieb,
    operator_norm_from_gram,
    spectrum_from_gram,
)
from .planar import PlanarPairing

__all__ = [
    "BudgetExceeded",
    "GradedAlgebra",
    "GradedElement",
    "Key",
    "DEFAULT_BOTTOM_BUDGET",
]

Key = tuple[int, int, int]
DEFAULT_BOTTOM_BUDGET = 24


class BudgetExceeded(RuntimeError):
    """A computation would need more bottom strands than the configured budget."""


def bottom_budget() -> int:
    raw = os.environ.get("GJS_BOTTOM_BUDGET")
    return int(raw) if raw else DEFAULT_BOTTOM_BUDGET


class GradedElement:
    """Immutable finite sum over ``(b, l, r)`` of morphisms ``b -> l + r``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Morphism] | None = None):
        clean: dict[Key, Morphism] = {}
        for key, morphism in (terms or {}).items():
            b, l, r = key
            if min(b, l, r) < 0:
                raise ValueError(f"negative grading {key}")
            if (morphism.source, morphism.target) != (b, l + r):
                raise ValueError(
                    f"morphism {morphism.source}->{morphism.target} does not fit grading {key}"
                )
            if not morphism.is_zero():
                clean[(b, l, r)] = morphism
        self._terms = MappingProxyType(clean)
        self._hash: int | None = None

    @classmethod
    def diagram(cls, b: int, l: int, r: int, pairing: PlanarPairing, coeff: Scalar = 1) -> GradedElement:
        return cls({(b, l, r): Morphism.diagram(pairing, coeff)})

    @classmethod
    def single(cls, key: Key, morphism: Morphism) -> GradedElement:
        return cls({key: morphism})

    @classmethod
    def sum(cls, parts: Iterable[tuple[Key, Morphism]]) -> GradedElement:
        acc: dict[Key, dict[PlanarPairing, Fraction]] = {}
        for key, morphism in parts:
            bucket = acc.setdefault(key, {})
            for p, c in morphism.items():
                bucket[p] = bucket.get(p, 0) + c
        return cls({k: Morphism(k[0], k[1] + k[2], v) for k, v in acc.items()})

    @property
    def terms(self) -> Mapping[Key, Morphism]:
        return self._terms

    def keys(self) -> list[Key]:
        return sorted(self._terms)

    def flat(self) -> Iterator[tuple[Key, PlanarPairing, Fraction]]:
        for key in self.keys():
            for p, c in sorted(self._terms[key].items()):
                yield key, p, c

    def component(self, key: Key) -> Morphism:
        b, l, r = key
        return self._terms.get(key) or Morphism.zero(b, l + r)

    def is_zero(self) -> bool:
        return not self._terms

    def num_terms(self) -> int:
        return sum(len(m) for m in self._terms.values())

    def corner(self) -> tuple[int, int] | None:
        """``(l, r)`` when every piece shares it; ``None`` when mixed or zero."""
        shapes = {(l, r) for _, l, r in self._terms}
        return shapes.pop() if len(shapes) == 1 else None

    def in_corner(self, l: int, r: int) -> bool:
        return all((kl, kr) == (l, r) for _, kl, kr in self._terms)

    def max_bottom(self) -> int:
        return max((b for b, _, _ in self._terms), default=0)

    def restrict(self, predicate) -> GradedElement:
        return GradedElement({k: m for k, m in self._terms.items() if predicate(*k)})

    def regrade(self, shift: int) -> GradedElement:
        """Move ``shift`` strands from the right group to the left group."""
        out = {}
        for (b, l, r), m in self._terms.items():
            if not (0 <= l + shift and 0 <= r - shift):
                raise ValueError(f"cannot shift piece {(b, l, r)} by {shift}")
            out[(b, l + shift, r - shift)] = m
        return GradedElement(out)

    def __add__(self, other: GradedElement) -> GradedElement:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return GradedElement.sum(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> GradedElement:
        return GradedElement({k: -m for k, m in self._terms.items()})

    def __sub__(self, other: GradedElement) -> GradedElement:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> GradedElement:
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return GradedElement({k: m * scalar for k, m in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        parts = [f"{k}: {m!r}" for k, m in sorted(self._terms.items())]
        return "GradedElement{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class NormEstimate:
    exponents: tuple[int, ...]
    values: tuple[float, ...]

    @property
    def best(self) -> float:
        return self.values[-1]


class GradedAlgebra:
    """Products, involution, traces and the tower maps on graded elements."""

    def __init__(self, category: TemperleyLieb | None = None):
        self.category = category or TemperleyLieb()

    @property
    def delta(self) -> Fraction:
        return self.category.delta

    # -- distinguished elements ------------------------------------------

    def empty(self) -> GradedElement:
        """The empty diagram, unit of the level-zero corner."""
        return GradedElement.diagram(0, 0, 0, planar.identity(0))

    def jones_projection(self, n: int) -> GradedElement:
        """``p_n``: a nested rainbow of ``n`` cups with ``n`` left and ``n`` right strands."""
        return GradedElement.diagram(0, n, n, planar.cup(n))

    def level_unit(self, n: int) -> GradedElement:
        """Unit of the level-``n`` planar algebra: the sum of ``p_k`` for ``k <= n``."""
        total = GradedElement()
        for k in range(n + 1):
            total = total + self.jones_projection(k)
        return total

    def frobenius_reciprocity(self, f: Morphism) -> GradedElement:
        """Bend the bottom strands of ``f : m -> n`` up on the left, landing in ``V[0, m, n]``."""
        return GradedElement.single((0, f.source, f.target), self.category.bend_left(f))

    def frobenius_inverse(self, x: GradedElement) -> Morphism:
        shape = x.corner()
        if shape is None or x.max_bottom() != 0:
            raise ValueError("expected a bottomless element in a single corner")
        m, n = shape
        return self.category.unbend_left(x.component((0, m, n)), m)

    # -- products ---------------------------------------------------------

    def _top_contraction(self, l: int, r: int, r2: int) -> Morphism:
        cat = self.category
        return cat.tensor(cat.identity(l), cat.cap(r), cat.identity(r2))

    def wedge(self, x: GradedElement, y: GradedElement) -> GradedElement:
        """Cap the right strands of ``x`` against the left strands of ``y``."""
        cat = self.category
        parts = []
        for (b1, l1, r1), m1 in x.terms.items():
            for (b2, l2, r2), m2 in y.terms.items():
                if r1 != l2:
                    continue
                glued = cat.compose(self._top_contraction(l1, r1, r2), cat.tensor(m1, m2))
                parts.append(((b1 + b2, l1, r2), glued))
        return GradedElement.sum(parts)

    def walker_summand(self, x: GradedElement, y: GradedElement, k: int) -> GradedElement:
        """The Walker-product term joining ``k`` bottom strands of ``x`` to ``y``."""
        cat = self.category
        parts = []
        for (b1, l1, r1), m1 in x.terms.items():
            for (b2, l2, r2), m2 in y.terms.items():
                if r1 != l2 or k > min(b1, b2):
                    continue
                lower = cat.tensor(cat.identity(b1 - k), cat.cup(k), cat.identity(b2 - k))
                glued = cat.compose_all(self._top_contraction(l1, r1, r2), cat.tensor(m1, m2), lower)
                parts.append(((b1 + b2 - 2 * k, l1, r2), glued))
        return GradedElement.sum(parts)

    def walker(self, x: GradedElement, y: GradedElement) -> GradedElement:
        top = min(x.max_bottom(), y.max_bottom())
        total = GradedElement()
        for k in range(top + 1):
            total = total + self.walker_summand(x, y, k)
        return total

    def star(self, x: GradedElement) -> GradedElement:
        """Involution: left-right mirror, exchanging the left and right strand groups."""
        return GradedElement({(b, r, l): self.category.mirror(m) for (b, l, r), m in x.terms.items()})

    def power(self, x: GradedElement, exponent: int, product=None) -> GradedElement:
        if exponent < 1:
            raise ValueError("exponent must be positive")
        multiply = product or self.wedge
        result = None
        base = x
        while exponent:
            if exponent & 1:
                result = base if result is None else multiply(result, base)
            exponent >>= 1
            if exponent:
                base = multiply(base, base)
        return result

    # -- traces -----------------------------------------------------------

    def close_top(self, m: Morphism, n: int) -> Morphism:
        """Cap ``2n`` top strands with a rainbow."""
        return self.category.compose(self.category.cap(n), m)

    def trace(self, x: GradedElement) -> Fraction:
        """Free-probability trace: close the top, sum over planar pairings of the bottom."""
        total = Fraction(0)
        for (b, l, r), m in x.terms.items():
            if l != r:
                continue
            closed = self.close_top(m, l)
            for pairing, coeff in closed.items():
                total += coeff * self._bottom_closure_sum(pairing)
        return total

    def _bottom_closure_sum(self, pairing: PlanarPairing) -> Fraction:
        return _closure_sum(self.delta, pairing)

    def phi(self, x: GradedElement) -> Fraction:
        """Rainbow closure of the bottomless part (a weight on the level-zero algebra)."""
        total = Fraction(0)
        for (b, l, r), m in x.terms.items():
            if b == 0 and l == r:
                total += self.category.scalar_part(self.close_top(m, l))
        return total

    def expectation(self, x: GradedElement) -> GradedElement:
        """Projection onto the bottomless part."""
        return x.restrict(lambda b, l, r: b == 0)

    def normalized_trace(self, x: GradedElement, n: int) -> Fraction:
        """``tr_n = delta**-n * Tr`` on the corner ``(n, n)``."""
        if not x.in_corner(n, n):
            raise ValueError(f"element is not in corner ({n}, {n})")
        return self.trace(x) / self.delta**n

    def corner_project(self, x: GradedElement, n: int, m: int) -> GradedElement:
        return self.wedge(self.wedge(self.jones_projection(n), x), self.jones_projection(m))

    # -- tower ------------------------------------------------------------

    def iota(self, x: GradedElement, n: int) -> GradedElement:
        """Embed the ``(0, 0)`` corner into the ``(n, n)`` corner by placing ``p_n`` alongside."""
        if not x.in_corner(0, 0):
            raise ValueError("iota expects an element of corner (0, 0)")
        cup = self.category.cup(n)
        return GradedElement({(b, n, n): self.category.tensor(m, cup) for (b, _, _), m in x.terms.items()})

    def capped_expectation(self, x: GradedElement, n: int) -> GradedElement:
        """``delta**-n`` times the rainbow closure of the top, valued in corner ``(0, 0)``."""
        if not x.in_corner(n, n):
            raise ValueError(f"element is not in corner ({n}, {n})")
        scale = Fraction(1) / self.delta**n
        return GradedElement({(b, 0, 0): self.close_top(m, n) * scale for (b, _, _), m in x.terms.items()})

    def conditional_expectation(self, x: GradedElement, n: int) -> GradedElement:
        """``E_n`` from corner ``(n, n)`` onto the image of ``iota_n``."""
        return self.iota(self.capped_expectation(x, n), n)

    def pull_back(self, x: GradedElement, n: int) -> GradedElement:
        """Inverse of ``iota_n`` on its image; raises if ``x`` is not in the image."""
        candidate = self.capped_expectation(x, n)
        if self.iota(candidate, n) != x:
            raise ValueError(f"element is not in the image of iota_{n}")
        return candidate

    def embed_level(self, x: GradedElement, extra: int) -> GradedElement:
        """Surround a bottomless element by ``extra`` nested cups (level ``n`` to ``n + extra``)."""
        if x.max_bottom():
            raise ValueError("embed_level acts on bottomless elements")
        cat = self.category
        out = {}
        for (_, l, r), m in x.terms.items():
            around = cat.tensor(cat.identity(extra), m, cat.identity(extra))
            out[(0, l + extra, r + extra)] = cat.compose(around, cat.cup(extra)) if extra else m
        return GradedElement(out)

    # -- norms ------------------------------------------------------------

    def moments(self, h: GradedElement, p_max: int = 64, budget: int | None = None) -> NormEstimate:
        """``tr_n(h**p) ** (1/p)`` for ``p = 1, 2, 4, ..., p_max`` and ``h`` in corner ``(n, n)``."""
        shape = h.corner()
        if shape is None or shape[0] != shape[1]:
            raise ValueError(f"moments need an element of a diagonal corner, got shape {shape}")
        n = shape[0]
        limit = bottom_budget() if budget is None else budget
        exponents = []
        p = 1
        while p <= p_max:
            exponents.append(p)
            p *= 2
        needed = exponents[-1] * h.max_bottom()
        if needed > limit:
            raise BudgetExceeded(
                f"moment p={exponents[-1]} needs {needed} bottom strands, budget is {limit}"
            )
        values = []
        current = h
        for i, p in enumerate(exponents):
            if i:
                current = self.wedge(current, current)
            moment = float(self.normalized_trace(current, n))
            values.append(max(moment, 0.0) ** (1.0 / p))
        return NormEstimate(tuple(exponents), tuple(values))

    def norm_estimate(self, a: GradedElement, p_max: int = 64, budget: int | None = None) -> NormEstimate:
        """Moment estimates ``tr_n((a* ∧ a)**p) ** (1/2p)`` for ``p = 1, 2, 4, ..., p_max``.

        The sequence is nondecreasing and tends to the C*-norm of ``a``.
        """
        shape = a.corner()
        if shape is None or shape[0] != shape[1]:
            raise ValueError(f"norm estimates need an element of a diagonal corner, got shape {shape}")
        squared = self.moments(self.wedge(self.star(a), a), p_max, budget)
        return NormEstimate(squared.exponents, tuple(v**0.5 for v in squared.values))

    def level_gns(self, level: int) -> "LevelGns":
        return _level_gns(self.delta, level)

    def gns_norm(self, a: GradedElement, level: int | None = None) -> float:
        """C*-norm of a bottomless element via the GNS space of ``phi`` at the given level."""
        return self.level_gns(self._level_of(a, level)).norm(a)

    def gns_spectrum(self, a: GradedElement, level: int | None = None) -> np.ndarray:
        return self.level_gns(self._level_of(a, level)).spectrum(a)

    @staticmethod
    def _level_of(a: GradedElement, level: int | None) -> int:
        if a.max_bottom():
            raise ValueError("GNS norms are available for bottomless elements only")
        needed = max((max(l, r) for _, l, r in a.terms), default=0)
        if level is None:
            return needed
        if level < needed:
            raise ValueError(f"element needs level {needed}, asked for {level}")
        return level

    # -- enumeration ------------------------------------------------------

    def diagrams(self, b: int, l: int, r: int) -> list[GradedElement]:
        if (b + l + r) % 2:
            return []
        return [
            GradedElement.diagram(b, l, r, p)
            for p in planar.enumerate_nc_pairings(b + l + r, bottom=b)
        ]


@lru_cache(maxsize=1 << 16)
def _closure_sum(delta: Fraction, pairing: PlanarPairing) -> Fraction:
    # pairing is a cap diagram on b points; sum delta**loops over all cup diagrams below it.
    total = Fraction(0)
    for below in planar.enumerate_nc_pairings(pairing.bottom, bottom=0):
        _, loops = planar.glue_vertical(pairing, below)
        total += delta**loops
    return total


class LevelGns:
    """GNS space of ``phi`` on the bottomless elements with at most ``level`` strands per side."""

    def __init__(self, algebra: GradedAlgebra, level: int):
        self.algebra = algebra
        self.level = level
        self.basis: list[tuple[Key, PlanarPairing]] = []
        for l in range(level + 1):
            for r in range(level + 1):
                if (l + r) % 2 == 0:
                    for p in planar.enumerate_nc_pairings(l + r, bottom=0):
                        self.basis.append(((0, l, r), p))
        self.index = {item: i for i, item in enumerate(self.basis)}
        size = len(self.basis)
        gram = np.zeros((size, size))
        elements = [GradedElement.diagram(*key, p) for key, p in self.basis]
        starred = [algebra.star(e) for e in elements]
        for i in range(size):
            for j in range(size):
                gram[i, j] = float(algebra.phi(algebra.wedge(starred[i], elements[j])))
        self.gram = gram
        self.elements = elements

    def left_multiplication(self, a: GradedElement) -> np.ndarray:
        size = len(self.basis)
        matrix = np.zeros((size, size))
        for j, v in enumerate(self.elements):
            for key, p, c in self.algebra.wedge(a, v).flat():
                matrix[self.index[(key, p)], j] += float(c)
        return matrix

    def norm(self, a: GradedElement) -> float:
        return operator_norm_from_gram(self.gram, self.left_multiplication(a))

    def spectrum(self, a: GradedElement) -> np.ndarray:
        return spectrum_from_gram(self.gram, self.left_multiplication(a))


@lru_cache(maxsize=16)
def _level_gns(delta: Fraction, level: int) -> LevelGns:
    return LevelGns(GradedAlgebra(TemperleyLieb(delta)), level)

