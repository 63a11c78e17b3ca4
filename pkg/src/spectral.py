"""
Named symmetric matrices of a graph, their eigendecompositions and inertia.

Zero classification uses tol = 1e-7 * max(1, max |eigenvalue|) unless a
tolerance is given. Any eigenvalue with |value| in (tol/10, 10*tol) marks the
spectrum as borderline.
"""
import logging
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Mapping, NamedTuple, Optional, Tuple

import numpy as np
from scipy import linalg

from src.errors import InconsistencyError, ValidationError
from src.graphs import Edge, Graph

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-12
RELATIVE_ZERO_TOLERANCE = 1e-7
RANK_TOLERANCE = 1e-8


class MatrixType(StrEnum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    SIGNLESS_LAPLACIAN = "signless-laplacian"
    WEIGHTED_ADJACENCY = "weighted-adjacency"


@dataclass(frozen=True)
class MatrixKind:
    """
    Which matrix to build. Weights are present iff the type is weighted-adjacency.

    Weights map edges to complex values; the entry for (w, v) is the conjugate
    of the entry for (v, w). Giving both orientations is allowed only when they
    are conjugate.
    """

    kind: MatrixType
    weights: Optional[Mapping[Edge, complex]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", MatrixType(self.kind))
        weighted = self.kind is MatrixType.WEIGHTED_ADJACENCY
        if weighted != (self.weights is not None):
            raise ValidationError("weights must be given exactly for weighted-adjacency")

    @classmethod
    def adjacency(cls) -> "MatrixKind":
        return cls(MatrixType.ADJACENCY)

    @classmethod
    def laplacian(cls) -> "MatrixKind":
        return cls(MatrixType.LAPLACIAN)

    @classmethod
    def signless_laplacian(cls) -> "MatrixKind":
        return cls(MatrixType.SIGNLESS_LAPLACIAN)

    @classmethod
    def weighted(cls, weights: Mapping[Edge, complex]) -> "MatrixKind":
        return cls(MatrixType.WEIGHTED_ADJACENCY, dict(weights))

    def __str__(self) -> str:
        return str(self.kind)


class Inertia(NamedTuple):
    positive: int
    zero: int
    negative: int


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending together with their sign classification."""

    eigenvalues: Tuple[float, ...]
    inertia: Inertia
    zero_tolerance: float
    matrix: MatrixKind
    borderline: bool = False

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def largest(self) -> float:
        return self.eigenvalues[0]

    @property
    def smallest(self) -> float:
        return self.eigenvalues[-1]

    @property
    def rank(self) -> int:
        return self.inertia.positive + self.inertia.negative

    @property
    def nullity(self) -> int:
        return self.inertia.zero

    def multiplicities(self, decimals: int = 8) -> Tuple[Tuple[float, int], ...]:
        """Distinct eigenvalues (rounded) with multiplicities, descending."""
        counts: dict = {}
        for mu in self.eigenvalues:
            key = round(mu, decimals) + 0.0
            counts[key] = counts.get(key, 0) + 1
        return tuple(sorted(counts.items(), reverse=True))


class Eigendecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class PsdSplit(NamedTuple):
    """A = B - C with B, C positive semidefinite and P+ / P- the spectral projectors."""

    B: np.ndarray
    C: np.ndarray
    P_plus: np.ndarray
    P_minus: np.ndarray


def build_matrix(g: Graph, kind: MatrixKind) -> np.ndarray:
    """
    Build A, L = D - A, Q = D + A or the Schur product W o A.

    Raises:
        ValidationError: if a weight is placed on a non-edge or is not Hermitian
    """
    a = g.adjacency()
    match kind.kind:
        case MatrixType.ADJACENCY:
            return a
        case MatrixType.LAPLACIAN:
            return np.diag(a.sum(axis=1)) - a
        case MatrixType.SIGNLESS_LAPLACIAN:
            return np.diag(a.sum(axis=1)) + a
    values = {}
    for (v, w), x in kind.weights.items():
        if not g.has_edge(v, w):
            raise ValidationError(f"weight on non-edge {{{v},{w}}}")
        values.setdefault((v, w), complex(x))
        mirrored = complex(x).conjugate()
        if (w, v) in values and abs(values[(w, v)] - mirrored) > HERMITIAN_TOLERANCE:
            raise ValidationError(f"weights on {{{v},{w}}} are not conjugate")
        values[(w, v)] = mirrored
    is_real = all(x.imag == 0 for x in values.values())
    m = np.zeros((g.n, g.n), dtype=float if is_real else complex)
    for (v, w), x in values.items():
        m[v, w] = x.real if is_real else x
    return m


def _check_hermitian(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    asym = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if asym > HERMITIAN_TOLERANCE:
        raise ValidationError(f"matrix is not Hermitian (residual {asym:.3g})")


def eigendecompose(m: np.ndarray) -> Eigendecomposition:
    """
    Full eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    Column i of the eigenvector matrix is a unit eigenvector for eigenvalue i.
    """
    m = np.asarray(m)
    _check_hermitian(m)
    n = m.shape[0]
    values, vectors = linalg.eigh(m)
    values, vectors = values[::-1].copy(), vectors[:, ::-1].copy()

    scale = max(1.0, float(np.max(np.abs(m))) * n) if n else 1.0
    residual = np.max(np.abs(m @ vectors - vectors * values)) if n else 0.0
    orthogonality = np.max(np.abs(vectors.conj().T @ vectors - np.eye(n))) if n else 0.0
    if residual > 1e-9 * scale or orthogonality > 1e-10:
        raise InconsistencyError(
            f"eigensolver residual {residual:.3g} / orthogonality {orthogonality:.3g} "
            "outside contract"
        )
    return Eigendecomposition(values, vectors)


def default_tolerance(values: np.ndarray) -> float:
    top = float(np.max(np.abs(values))) if len(values) else 0.0
    return RELATIVE_ZERO_TOLERANCE * max(1.0, top)


def classify(values: np.ndarray, tol: float) -> Tuple[Inertia, bool]:
    values = np.asarray(values)
    positive = int(np.sum(values > tol))
    negative = int(np.sum(values < -tol))
    magnitude = np.abs(values)
    borderline = bool(np.any((magnitude > tol / 10) & (magnitude < 10 * tol)))
    return Inertia(positive, len(values) - positive - negative, negative), borderline


def spectrum_of(m: np.ndarray, kind: MatrixKind, tol: Optional[float] = None) -> Spectrum:
    values = eigendecompose(m).eigenvalues
    if tol is None:
        tol = default_tolerance(values)
    elif tol <= 0:
        raise ValidationError("zero tolerance must be positive")
    inertia_, borderline = classify(values, tol)
    if borderline:
        logger.warning(
            "borderline %s eigenvalue near zero tolerance %.3g; inertia %s may be fragile",
            kind,
            tol,
            tuple(inertia_),
        )
    return Spectrum(
        eigenvalues=tuple(float(x) for x in values),
        inertia=inertia_,
        zero_tolerance=tol,
        matrix=kind,
        borderline=borderline,
    )


def spectrum(g: Graph, kind: Optional[MatrixKind] = None, tol: Optional[float] = None) -> Spectrum:
    kind = kind or MatrixKind.adjacency()
    return spectrum_of(build_matrix(g, kind), kind, tol)


def inertia(g: Graph, tol: Optional[float] = None) -> Spectrum:
    """Adjacency spectrum of g with its inertia (n+, n0, n-)."""
    return spectrum(g, MatrixKind.adjacency(), tol)


def numerical_rank(m: np.ndarray) -> int:
    """Number of singular values above 1e-8 times the largest one."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    sigma = linalg.svdvals(m)
    if sigma[0] == 0:
        return 0
    return int(np.sum(sigma > RANK_TOLERANCE * sigma[0]))


def psd_split(g: Graph, tol: Optional[float] = None) -> PsdSplit:
    """Split A into its positive and negative spectral parts."""
    a = g.adjacency()
    values, vectors = eigendecompose(a)
    if tol is None:
        tol = default_tolerance(values)
    pos = values > tol
    neg = values < -tol
    f_pos, f_neg = vectors[:, pos], vectors[:, neg]
    b = (f_pos * values[pos]) @ f_pos.conj().T
    c = (f_neg * -values[neg]) @ f_neg.conj().T
    return PsdSplit(b, c, f_pos @ f_pos.conj().T, f_neg @ f_neg.conj().T)


def spectral_fingerprint(g: Graph, decimals: int = 6) -> Tuple:
    """Isomorphism-invariant fingerprint: order, size, degree sequence, rounded spectrum."""
    values = inertia(g).eigenvalues
    return (
        g.n,
        g.m,
        tuple(sorted(g.degrees)),
        tuple(round(x, decimals) + 0.0 for x in values),
    )
