"""The Temperley-Lieb category over the rationals.

Objects are natural numbers (tensor powers of a single self-dual strand).
A :class:`Morphism` is a finite rational combination of planar pairings with a
fixed number of bottom points (the source) and top points (the target).
Closed loops evaluate to the loop value ``delta``, held by
:class:`TemperleyLieb` together with every operation that can create loops.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

import numpy as np
import scipy.linalg

from . import planar
from .planar import PlanarPairing

__all__ = ["Morphism", "Scalar", "TemperleyLieb", "as_fraction", "catalan"]

Scalar = Union[Fraction, int]


def as_fraction(value: object) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


class Morphism:
    """A rational combination of pairings from ``source`` bottom points to ``target`` top points.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("source", "target", "_terms", "_hash")

    def __init__(self, source: int, target: int, terms: Mapping[PlanarPairing, Scalar] | None = None):
        if (source + target) % 2:
            raise ValueError(f"odd boundary: no pairings from {source} to {target} points")
        clean: dict[PlanarPairing, Fraction] = {}
        for pairing, coeff in (terms or {}).items():
            if pairing.bottom != source or pairing.top != target:
                raise ValueError(
                    f"pairing with shape {pairing.bottom}->{pairing.top} "
                    f"in a morphism {source}->{target}"
                )
            value = Fraction(coeff)
            if value:
                clean[pairing] = value
        self.source = source
        self.target = target
        self._terms = MappingProxyType(clean)
        self._hash: int | None = None

    @classmethod
    def diagram(cls, pairing: PlanarPairing, coeff: Scalar = 1) -> Morphism:
        return cls(pairing.bottom, pairing.top, {pairing: coeff})

    @classmethod
    def zero(cls, source: int, target: int) -> Morphism:
        return cls(source, target)

    @property
    def terms(self) -> Mapping[PlanarPairing, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[PlanarPairing, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, pairing: PlanarPairing) -> Fraction:
        return self._terms.get(pairing, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _check_same_shape(self, other: Morphism) -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError(
                f"shape mismatch: {self.source}->{self.target} vs {other.source}->{other.target}"
            )

    def __add__(self, other: Morphism) -> Morphism:
        if not isinstance(other, Morphism):
            return NotImplemented
        self._check_same_shape(other)
        out = dict(self._terms)
        for p, c in other.items():
            out[p] = out.get(p, 0) + c
        return Morphism(self.source, self.target, out)

    def __neg__(self) -> Morphism:
        return Morphism(self.source, self.target, {p: -c for p, c in self.items()})

    def __sub__(self, other: Morphism) -> Morphism:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> Morphism:
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return Morphism(self.source, self.target, {p: c * scalar for p, c in self.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and dict(
            self._terms
        ) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.source, self.target, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{p.pairs()}" for p, c in sorted(self.items())) or "0"
        return f"Morphism({self.source}->{self.target}: {body})"


class TemperleyLieb:
    """Temperley-Lieb category with rational loop value ``delta > 2``."""

    def __init__(self, delta: Scalar | str = Fraction(5, 2)):
        value = as_fraction(delta)
        if value <= 2:
            raise ValueError(f"loop value must exceed 2 (got {value})")
        self.delta = value
        self._powers: dict[int, Fraction] = {}

    def __repr__(self) -> str:
        return f"TemperleyLieb(delta={self.delta})"

    def loop_power(self, k: int) -> Fraction:
        power = self._powers.get(k)
        if power is None:
            power = self._powers[k] = self.delta**k
        return power

    # -- basic morphisms -------------------------------------------------

    def identity(self, n: int) -> Morphism:
        return Morphism.diagram(planar.identity(n))

    def cup(self, n: int) -> Morphism:
        """Coevaluation ``0 -> 2n`` as a nested rainbow."""
        return Morphism.diagram(planar.cup(n))

    def cap(self, n: int) -> Morphism:
        """Evaluation ``2n -> 0`` as a nested rainbow."""
        return Morphism.diagram(planar.cap(n))

    def ev_coev(self, n: int) -> tuple[Morphism, Morphism]:
        return self.cap(n), self.cup(n)

    def hom_basis(self, source: int, target: int) -> list[PlanarPairing]:
        if (source + target) % 2:
            return []
        return planar.enumerate_nc_pairings(source + target, bottom=source)

    # -- structure -------------------------------------------------------

    def compose(self, upper: Morphism, lower: Morphism) -> Morphism:
        """``upper ∘ lower``: ``lower`` is applied first."""
        if upper.source != lower.target:
            raise ValueError(
                f"cannot compose {upper.source}->{upper.target} after {lower.source}->{lower.target}"
            )
        out: dict[PlanarPairing, Fraction] = {}
        for pu, cu in upper.items():
            for pl, cl in lower.items():
                glued, loops = planar.glue_vertical(pu, pl)
                out[glued] = out.get(glued, 0) + cu * cl * self.loop_power(loops)
        return Morphism(lower.source, upper.target, out)

    def compose_all(self, *layers: Morphism) -> Morphism:
        """Compose from the top down: ``compose_all(f, g, h) = f ∘ g ∘ h``."""
        result = layers[-1]
        for layer in reversed(layers[:-1]):
            result = self.compose(layer, result)
        return result

    def tensor(self, *factors: Morphism) -> Morphism:
        result = factors[0]
        for right in factors[1:]:
            out: dict[PlanarPairing, Fraction] = {}
            for pl, cl in result.items():
                for pr, cr in right.items():
                    joined = planar.juxtapose(pl, pr)
                    out[joined] = out.get(joined, 0) + cl * cr
            result = Morphism(result.source + right.source, result.target + right.target, out)
        return result

    def dagger(self, f: Morphism) -> Morphism:
        """Adjoint: the vertical reflection (coefficients are real)."""
        return Morphism(f.target, f.source, {p.flip(): c for p, c in f.items()})

    def mirror(self, f: Morphism) -> Morphism:
        """Left-right reflection."""
        return Morphism(f.source, f.target, {p.mirror(): c for p, c in f.items()})

    def scalar_part(self, f: Morphism) -> Fraction:
        """Coefficient of the empty diagram of a morphism ``0 -> 0``."""
        if f.source or f.target:
            raise ValueError("only morphisms 0 -> 0 are scalars")
        return f.coeff(planar.identity(0))

    def categorical_trace(self, f: Morphism, side: str = "right") -> Fraction:
        """Close an endomorphism with rainbow arcs on the given side."""
        if f.source != f.target:
            raise ValueError(f"trace needs an endomorphism, got {f.source}->{f.target}")
        n = f.source
        if side == "right":
            closed = self.compose_all(self.cap(n), self.tensor(f, self.identity(n)), self.cup(n))
        elif side == "left":
            closed = self.compose_all(self.cap(n), self.tensor(self.identity(n), f), self.cup(n))
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        return self.scalar_part(closed)

    def dual_morphism(self, f: Morphism) -> Morphism:
        """The mate ``f^∨ : target -> source`` built from (co)evaluations."""
        a, b = f.source, f.target
        return self.compose_all(
            self.tensor(self.cap(b), self.identity(a)),
            self.tensor(self.identity(b), f, self.identity(a)),
            self.tensor(self.identity(b), self.cup(a)),
        )

    def bend_left(self, f: Morphism) -> Morphism:
        """Bend every bottom strand up on the left: ``m -> n`` becomes ``0 -> m + n``."""
        m = f.source
        return self.compose(self.tensor(self.identity(m), f), self.cup(m))

    def unbend_left(self, g: Morphism, m: int) -> Morphism:
        """Inverse of :meth:`bend_left` for the first ``m`` top points of ``g : 0 -> m + n``."""
        if g.source != 0 or g.target < m:
            raise ValueError(f"cannot unbend {m} strands of a morphism {g.source}->{g.target}")
        n = g.target - m
        return self.compose(self.tensor(self.cap(m), self.identity(n)), self.tensor(self.identity(m), g))

    def bend_right(self, f: Morphism, k: int) -> Morphism:
        """Bend the last ``k`` bottom strands up on the right: ``b -> t`` becomes ``b-k -> t+k``."""
        if k > f.source:
            raise ValueError(f"cannot bend {k} of {f.source} bottom strands")
        return self.compose(
            self.tensor(f, self.identity(k)),
            self.tensor(self.identity(f.source - k), self.cup(k)),
        )

    def unbend_right(self, g: Morphism, k: int) -> Morphism:
        """Inverse of :meth:`bend_right`: the last ``k`` top strands go back down."""
        if k > g.target:
            raise ValueError(f"cannot unbend {k} of {g.target} top strands")
        t = g.target - k
        return self.compose(
            self.tensor(self.identity(t), self.cap(k)),
            self.tensor(g, self.identity(k)),
        )

    # -- Hilbert space structure -----------------------------------------

    def gns(self, n: int) -> "EndomorphismGns":
        return _gns(self.delta, n)

    def operator_norm(self, f: Morphism, level: int | None = None) -> float:
        """Norm of ``f`` acting by composition in the GNS space of the trace on ``End(n)``."""
        if f.source != f.target:
            raise ValueError("operator norm is defined for endomorphisms")
        if level is not None and level != f.source:
            raise ValueError(f"morphism acts on {f.source} strands, not {level}")
        return self.gns(f.source).norm(f)


class EndomorphismGns:
    """``End(n)`` with the inner product ``<u, v> = Tr(u† ∘ v)`` on its diagram basis."""

    def __init__(self, category: TemperleyLieb, n: int):
        self.category = category
        self.n = n
        self.basis = category.hom_basis(n, n)
        self.index = {p: i for i, p in enumerate(self.basis)}
        size = len(self.basis)
        gram = np.zeros((size, size))
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                product = category.compose(category.dagger(Morphism.diagram(u)), Morphism.diagram(v))
                gram[i, j] = float(category.categorical_trace(product))
        self.gram = gram

    def left_multiplication(self, f: Morphism) -> np.ndarray:
        size = len(self.basis)
        matrix = np.zeros((size, size))
        for j, v in enumerate(self.basis):
            image = self.category.compose(f, Morphism.diagram(v))
            for p, c in image.items():
                matrix[self.index[p], j] += float(c)
        return matrix

    def norm(self, f: Morphism) -> float:
        return operator_norm_from_gram(self.gram, self.left_multiplication(f))


@lru_cache(maxsize=32)
def _gns(delta: Fraction, n: int) -> EndomorphismGns:
    return EndomorphismGns(TemperleyLieb(delta), n)


def operator_norm_from_gram(gram: np.ndarray, matrix: np.ndarray) -> float:
    """Operator norm of ``matrix`` on the inner product space with Gram matrix ``gram``."""
    if matrix.size == 0:
        return 0.0
    pulled = matrix.T @ gram @ matrix
    pulled = (pulled + pulled.T) / 2
    eigenvalues = _generalized_eigenvalues(pulled, gram)
    return float(math.sqrt(max(float(eigenvalues.max()), 0.0)))


def spectrum_from_gram(gram: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a self-adjoint operator given in a non-orthonormal basis."""
    if matrix.size == 0:
        return np.zeros(0)
    form = gram @ matrix
    form = (form + form.T) / 2
    return _generalized_eigenvalues(form, gram)


def _generalized_eigenvalues(form: np.ndarray, gram: np.ndarray) -> np.ndarray:
    try:
        return scipy.linalg.eigh(form, gram, eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise ValueError("Gram matrix is not positive definite") from exc


def linear_combination(pieces: Iterable[tuple[Scalar, Morphism]], source: int, target: int) -> Morphism:
    out: dict[PlanarPairing, Fraction] = {}
    for scalar, f in pieces:
        for p, c in f.items():
            out[p] = out.get(p, 0) + scalar * c
    return Morphism(source, target, out)
