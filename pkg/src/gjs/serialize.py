"""JSON codecs. Point indices are 1-based on the wire; coefficients are ``"p/q"`` strings."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .bimodules import CornerElement
from .category import Morphism, as_fraction
from .fock import FockVector
from .graded import GradedElement
from .planar import PlanarPairing

__all__ = [
    "corner_from_json",
    "corner_to_json",
    "element_from_json",
    "element_to_json",
    "fock_from_json",
    "fock_to_json",
    "morphism_from_json",
    "morphism_to_json",
    "pairing_from_json",
    "pairing_to_json",
]


def scalar_to_json(value: Fraction) -> str:
    return str(Fraction(value))


def pairing_to_json(p: PlanarPairing, left: int | None = None) -> dict[str, Any]:
    """``left`` splits the top row into left/right groups; by default all top points are left."""
    l = p.top if left is None else left
    return {
        "b": p.bottom,
        "l": l,
        "r": p.top - l,
        "match": [[i + 1, j + 1] for i, j in p.pairs()],
    }


def pairing_from_json(data: dict[str, Any]) -> PlanarPairing:
    bottom = int(data["b"])
    top = int(data["l"]) + int(data.get("r", 0))
    return PlanarPairing.from_pairs(bottom, top, [(int(i) - 1, int(j) - 1) for i, j in data["match"]])


def morphism_to_json(f: Morphism, left: int | None = None) -> dict[str, Any]:
    return {
        "source": f.source,
        "target": f.target,
        "terms": [
            {"pairing": pairing_to_json(p, left), "coeff": scalar_to_json(c)}
            for p, c in sorted(f.items(), key=lambda item: item[0].pairs())
        ],
    }


def morphism_from_json(data: dict[str, Any]) -> Morphism:
    source, target = int(data["source"]), int(data["target"])
    terms: dict[PlanarPairing, Fraction] = {}
    for term in data["terms"]:
        p = pairing_from_json(term["pairing"])
        terms[p] = terms.get(p, Fraction(0)) + as_fraction(term["coeff"])
    return Morphism(source, target, terms)


def element_to_json(x: GradedElement, delta: Fraction) -> dict[str, Any]:
    return {
        "delta": scalar_to_json(delta),
        "terms": [
            {"b": b, "l": l, "r": r, "morphism": morphism_to_json(x.terms[(b, l, r)], left=l)}
            for b, l, r in x.keys()
        ],
    }


def element_from_json(data: dict[str, Any]) -> tuple[Fraction | None, GradedElement]:
    delta = as_fraction(data["delta"]) if "delta" in data else None
    parts = []
    for term in data["terms"]:
        key = (int(term["b"]), int(term["l"]), int(term["r"]))
        parts.append((key, morphism_from_json(term["morphism"])))
    return delta, GradedElement.sum(parts)


def fock_to_json(v: FockVector, delta: Fraction) -> dict[str, Any]:
    return {
        "depth": v.depth,
        "truncated": v.truncated,
        "sectors": {str(b): element_to_json(v.sectors[b], delta) for b in sorted(v.sectors)},
    }


def fock_from_json(data: dict[str, Any]) -> FockVector:
    sectors = {int(b): element_from_json(payload)[1] for b, payload in data["sectors"].items()}
    return FockVector(int(data["depth"]), sectors, bool(data.get("truncated", False)))


def corner_to_json(xi: CornerElement, delta: Fraction) -> dict[str, Any]:
    out = element_to_json(xi.payload, delta)
    out["shape"] = list(xi.shape)
    return out


def corner_from_json(data: dict[str, Any]) -> CornerElement:
    l, r = data["shape"]
    return CornerElement((int(l), int(r)), element_from_json(data)[1])
