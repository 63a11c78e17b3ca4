from abc import ABC, abstractmethod
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from fractions import Fraction
from typing import Optional, Union

from src.graphs import Graph
from src.spectral import MatrixKind, Spectrum, spectrum


class BoundTarget(StrEnum):
    """The parameter a bound provably lower-bounds."""

    CHI_VECT = "chi_vect<=xi"
    XI = "xi"
    XI_F = "xi_f"


BoundNumber = Union[float, Fraction]


@dataclass(frozen=True)
class BoundValue:
    """
    One evaluated lower bound.

    Attributes:
        name: Bound name, e.g. "hoffman"
        value: Float, or an exact Fraction for inertial and degenerate values
        target: What the value provably lower-bounds
        matrix: Which matrix (and weighting) the value came from
        degenerate: True when the graph has no edges and the value is the convention 1
    """

    name: str
    value: BoundNumber
    target: BoundTarget
    matrix: str
    degenerate: bool = False

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class SpectralProfile:
    """The three spectra every closed-form bound reads from."""

    graph: Graph
    adjacency: Spectrum
    laplacian: Spectrum
    signless: Spectrum

    @classmethod
    def of(cls, g: Graph, tol: Optional[float] = None) -> "SpectralProfile":
        return cls(
            graph=g,
            adjacency=spectrum(g, MatrixKind.adjacency(), tol),
            laplacian=spectrum(g, MatrixKind.laplacian()),
            signless=spectrum(g, MatrixKind.signless_laplacian()),
        )


class SpectralBound(ABC):
    """
    Abstract base class for a lower bound computed from a graph's spectra.
    """

    name: str
    target: BoundTarget

    @abstractmethod
    def evaluate(self, profile: SpectralProfile) -> BoundValue:
        """
        Evaluate the bound.

        Args:
            profile: Adjacency, Laplacian and signless Laplacian spectra of one graph

        Returns:
            BoundValue: the value tagged with its target and provenance
        """
        pass
