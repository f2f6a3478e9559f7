"""Corner bimodules and the functor from Temperley-Lieb into them.

The corner of shape ``(l, r)`` consists of graded elements whose pieces all have
``l`` left and ``r`` right strands. The level-zero algebra acts on the left
through ``iota_l`` and on the right through ``iota_r``. Both inner products are
valued in the level-zero algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .category import Morphism
from .graded import GradedAlgebra, GradedElement
from .planar import identity as identity_pairing

__all__ = ["BimoduleCalculus", "CornerElement", "IndexResult", "Subobject"]

_EMPTY = identity_pairing(0)


@dataclass(frozen=True)
class CornerElement:
    """An element of the corner bimodule of the given ``(left, right)`` shape."""

    shape: tuple[int, int]
    payload: GradedElement

    def __post_init__(self) -> None:
        l, r = self.shape
        if min(l, r) < 0:
            raise ValueError("shape must be non-negative")
        if not self.payload.in_corner(l, r):
            raise ValueError(f"payload has pieces outside corner {self.shape}")

    @classmethod
    def of(cls, payload: GradedElement) -> CornerElement:
        shape = payload.corner()
        if shape is None:
            raise ValueError("cannot infer the corner of a zero or mixed element")
        return cls(shape, payload)

    def __add__(self, other: CornerElement) -> CornerElement:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return CornerElement(self.shape, self.payload + other.payload)

    def __sub__(self, other: CornerElement) -> CornerElement:
        return self + other * -1

    def __mul__(self, scalar) -> CornerElement:
        return CornerElement(self.shape, self.payload * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class IndexResult:
    right_index: GradedElement
    left_index: GradedElement

    def scalars(self) -> tuple[Fraction, Fraction] | None:
        """Both indices as numbers when they are multiples of the empty diagram."""
        values = []
        for element in (self.right_index, self.left_index):
            if any(k != (0, 0, 0) for k in element.terms):
                return None
            values.append(element.component((0, 0, 0)).coeff(_EMPTY))
        return values[0], values[1]


class BimoduleCalculus:
    def __init__(self, algebra: GradedAlgebra):
        self.algebra = algebra
        self.category = algebra.category

    # actions and inner products

    def act(self, left: GradedElement, xi: CornerElement, right: GradedElement) -> CornerElement:
        alg = self.algebra
        l, r = xi.shape
        product = alg.wedge(alg.wedge(alg.iota(left, l), xi.payload), alg.iota(right, r))
        return CornerElement(xi.shape, product)

    def act_left(self, left: GradedElement, xi: CornerElement) -> CornerElement:
        return CornerElement(xi.shape, self.algebra.wedge(self.algebra.iota(left, xi.shape[0]), xi.payload))

    def act_right(self, xi: CornerElement, right: GradedElement) -> CornerElement:
        return CornerElement(xi.shape, self.algebra.wedge(xi.payload, self.algebra.iota(right, xi.shape[1])))

    def right_inner(self, xi: CornerElement, eta: CornerElement) -> GradedElement:
        """``delta**r * E_r(xi* ∧ eta)``, read back in the level-zero corner."""
        self._same_shape(xi, eta)
        r = xi.shape[1]
        product = self.algebra.wedge(self.algebra.star(xi.payload), eta.payload)
        return self.algebra.capped_expectation(product, r) * self.algebra.delta**r

    def left_inner(self, xi: CornerElement, eta: CornerElement) -> GradedElement:
        """``delta**l * E_l(xi ∧ eta*)``, read back in the level-zero corner."""
        self._same_shape(xi, eta)
        l = xi.shape[0]
        product = self.algebra.wedge(xi.payload, self.algebra.star(eta.payload))
        return self.algebra.capped_expectation(product, l) * self.algebra.delta**l

    def l2_inner(self, xi: CornerElement, eta: CornerElement) -> Fraction:
        return self.algebra.trace(self.right_inner(xi, eta))

    @staticmethod
    def _same_shape(xi: CornerElement, eta: CornerElement) -> None:
        if xi.shape != eta.shape:
            raise ValueError(f"inner product of shapes {xi.shape} and {eta.shape}")

    # regrading

    def dot_shift(self, xi: CornerElement, steps: int) -> CornerElement:
        """Move the marked point ``steps`` strands to the right (negative: to the left)."""
        l, r = xi.shape
        if not (0 <= l + steps and 0 <= r - steps):
            raise ValueError(f"cannot shift shape {xi.shape} by {steps}")
        return CornerElement((l + steps, r - steps), xi.payload.regrade(steps))

    def conjugate(self, xi: CornerElement) -> CornerElement:
        """Star followed by shifting the dot back, staying in shape ``(0, n)``."""
        if xi.shape[0] != 0:
            raise ValueError(f"conjugation is defined on shapes (0, n), not {xi.shape}")
        starred = CornerElement((xi.shape[1], 0), self.algebra.star(xi.payload))
        return self.dot_shift(starred, -xi.shape[1])

    conj_structure = conjugate

    # fusion and the functor

    def fuse(self, word: Sequence[CornerElement]) -> CornerElement:
        """Juxtapose factors of shapes ``(0, n_i)``; bottoms and tops concatenate in order."""
        if not word:
            return CornerElement((0, 0), self.algebra.empty())
        for factor in word:
            if factor.shape[0] != 0:
                raise ValueError(f"fusion factors need shape (0, n), got {factor.shape}")
        result = word[0]
        for factor in word[1:]:
            result = self.tensorator(result, factor)
        return result

    def tensorator(self, xi: CornerElement, eta: CornerElement) -> CornerElement:
        n, m = xi.shape[1], eta.shape[1]
        parts = []
        for (b1, _, _), f in xi.payload.terms.items():
            for (b2, _, _), g in eta.payload.terms.items():
                parts.append(((b1 + b2, 0, n + m), self.category.tensor(f, g)))
        return CornerElement((0, n + m), GradedElement.sum(parts))

    def functor_on_morphism(self, f: Morphism, xi: CornerElement) -> CornerElement:
        """``xi ∧ FR(f)``: feed the right strands of ``xi`` into ``f``."""
        if xi.shape != (0, f.source):
            raise ValueError(f"morphism with source {f.source} cannot act on shape {xi.shape}")
        product = self.algebra.wedge(xi.payload, self.algebra.frobenius_reciprocity(f))
        return CornerElement((0, f.target), product)

    def through_strands(self, n: int) -> CornerElement:
        """``n`` vertical strands seen in shape ``(0, n)``; the functor applied to it recovers ``f``."""
        return CornerElement((0, n), GradedElement.single((n, 0, n), self.category.identity(n)))

    def recover_morphism(self, image: CornerElement, source: int) -> Morphism:
        """Read ``f`` back from ``F(f)`` applied to :meth:`through_strands`."""
        n = image.shape[1]
        return image.payload.component((source, 0, n))

    # index

    def index_from_bases(
        self,
        left_basis: Sequence[CornerElement],
        right_basis: Sequence[CornerElement],
        samples: Sequence[CornerElement],
    ) -> IndexResult:
        """Validate both reproduction identities on ``samples`` and sum the basis norms.

        ``right_basis`` must satisfy ``xi = sum_i u_i ◁ <u_i | xi>`` and
        ``left_basis`` must satisfy ``xi = sum_j <xi, v_j> ▷ v_j``.
        """
        for xi in samples:
            rebuilt = None
            for u in right_basis:
                piece = self.act_right(u, self.right_inner(u, xi))
                rebuilt = piece if rebuilt is None else rebuilt + piece
            if rebuilt is None or rebuilt.payload != xi.payload:
                raise ValueError("right basis does not reproduce the samples")
            rebuilt = None
            for v in left_basis:
                piece = self.act_left(self.left_inner(xi, v), v)
                rebuilt = piece if rebuilt is None else rebuilt + piece
            if rebuilt is None or rebuilt.payload != xi.payload:
                raise ValueError("left basis does not reproduce the samples")
        right_index = GradedElement()
        for u in right_basis:
            right_index = right_index + self.left_inner(u, u)
        left_index = GradedElement()
        for v in left_basis:
            left_index = left_index + self.right_inner(v, v)
        return IndexResult(right_index, left_index)

    def index_surrogate(self, n: int) -> GradedElement:
        """``delta**n * E_n(p_n)``; equals ``delta**n * p_n``."""
        alg = self.algebra
        return alg.conditional_expectation(alg.jones_projection(n), n) * alg.delta**n


@dataclass(frozen=True)
class Subobject:
    """The image of the functor under a self-adjoint idempotent ``projection`` on ``n`` strands."""

    calculus: BimoduleCalculus
    projection: Morphism

    def __post_init__(self) -> None:
        cat = self.calculus.category
        p = self.projection
        if p.source != p.target:
            raise ValueError("projection must be an endomorphism")
        if cat.compose(p, p) != p or cat.dagger(p) != p:
            raise ValueError("projection must be a self-adjoint idempotent")

    @property
    def strands(self) -> int:
        return self.projection.source

    def project(self, xi: CornerElement) -> CornerElement:
        return self.calculus.functor_on_morphism(self.projection, xi)

    def contains(self, xi: CornerElement) -> bool:
        return xi.shape == (0, self.strands) and self.project(xi).payload == xi.payload

    def morphism_to(self, other: Subobject, f: Morphism) -> Morphism:
        """Compress ``f`` to a morphism between the two subobjects."""
        cat = self.calculus.category
        return cat.compose_all(other.projection, f, self.projection)

    def tensor(self, other: Subobject) -> Subobject:
        return Subobject(self.calculus, self.calculus.category.tensor(self.projection, other.projection))

