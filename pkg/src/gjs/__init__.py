"""Exact diagrammatic computations in Temperley-Lieb graded algebras."""

from .bimodules import BimoduleCalculus, CornerElement, Subobject
from .category import Morphism, TemperleyLieb
from .fock import FockModule, FockVector
from .graded import BudgetExceeded, GradedAlgebra, GradedElement
from .planar import PlanarPairing, enumerate_nc_pairings, glue_vertical, juxtapose

__all__ = [
    "BimoduleCalculus",
    "BudgetExceeded",
    "CornerElement",
    "FockModule",
    "FockVector",
    "GradedAlgebra",
    "GradedElement",
    "Morphism",
    "PlanarPairing",
    "Subobject",
    "TemperleyLieb",
    "enumerate_nc_pairings",
    "glue_vertical",
    "juxtapose",
]
