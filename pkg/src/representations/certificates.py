"""
Orthogonal-representation and d/r-projector certificates: types, independent
verification, first-entry normalisation, the diagonal conversion identity and
JSON serialisation (complex numbers as [re, im] pairs).
"""
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from scipy import linalg
from scipy.stats import unitary_group

from src.bounds.inertial import inertial_value, weaker_inertial_value
from src.errors import InconsistencyError, LimitExceededError, ValidationError
from src.graphs import Graph, parse_graph6, serialize_graph6
from src.spectral import Spectrum, inertia, numerical_rank

logger = logging.getLogger(__name__)

SUCCESS_TOLERANCE = 1e-9
ACCEPT_TOLERANCE = 1e-8
FIRST_ENTRY_TOLERANCE = 1e-12
BLOCK_SIZE_LIMIT = 1024


def edge_residual(g: Graph, vectors: np.ndarray) -> float:
    """max over edges of |x_v^dagger x_w|, from the Gram matrix."""
    if g.m == 0:
        return 0.0
    gram = vectors.conj() @ vectors.T
    e = np.array(g.sorted_edges)
    return float(np.max(np.abs(gram[e[:, 0], e[:, 1]])))


@dataclass(frozen=True, eq=False)
class OrthoRepresentation:
    """
    One complex vector per vertex (row v of `vectors` is x_v).

    `normalized` marks vectors whose entries all have modulus d^(-1/2).
    """

    dimension: int
    vectors: np.ndarray
    residual: float
    normalized: bool = False

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=complex)
        if vectors.ndim != 2 or vectors.shape[1] != self.dimension:
            raise ValidationError(
                f"vectors of shape {vectors.shape} do not match dimension {self.dimension}"
            )
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @classmethod
    def from_vectors(cls, g: Graph, vectors: np.ndarray, normalized: bool = False):
        vectors = np.asarray(vectors, dtype=complex)
        return cls(vectors.shape[1], vectors, edge_residual(g, vectors), normalized)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    def has_unit_first_entries(self) -> bool:
        return bool(np.all(np.abs(self.vectors[:, 0] - 1) <= FIRST_ENTRY_TOLERANCE))

    def transformed(self, g: Graph, u: np.ndarray) -> "OrthoRepresentation":
        """Apply y_v = U x_v to every vector."""
        return OrthoRepresentation.from_vectors(g, self.vectors @ np.asarray(u).T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthoRepresentation):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.normalized == other.normalized
            and self.residual == other.residual
            and np.array_equal(self.vectors, other.vectors)
        )

    __hash__ = None


@dataclass(frozen=True)
class RepresentationCheck:
    valid: bool
    residual: float
    diagnostics: Tuple[str, ...] = ()


def verify_orthogonal_representation(
    g: Graph, rep: OrthoRepresentation, tol: float = ACCEPT_TOLERANCE
) -> RepresentationCheck:
    """
    Re-check a vector certificate edge by edge with compensated summation,
    independently of the Gram-matrix path the searcher uses.
    """
    if rep.n != g.n:
        raise ValidationError(f"representation has {rep.n} vectors for {g.n} vertices")
    diagnostics = []
    for v in range(g.n):
        if not np.any(rep.vectors[v]):
            diagnostics.append(f"vector of vertex {v} is zero")
    residual = 0.0
    for v, w in g.sorted_edges:
        products = [a.conjugate() * b for a, b in zip(rep.vectors[v], rep.vectors[w])]
        re = math.fsum(p.real for p in products)
        im = math.fsum(p.imag for p in products)
        residual = max(residual, math.hypot(re, im))
    if residual >= tol:
        diagnostics.append(f"orthogonality residual {residual:.3g} >= {tol:.1g}")
    if rep.normalized:
        modulus = rep.dimension ** -0.5
        worst = float(np.max(np.abs(np.abs(rep.vectors) - modulus)))
        if worst > 1e-8:
            diagnostics.append(f"entry modulus deviates from d^(-1/2) by {worst:.3g}")
    return RepresentationCheck(not diagnostics, residual, tuple(diagnostics))


def inertial_condition_holds(d: int, n_plus: int, n_minus: int) -> bool:
    """(d-1) n+ >= n- and (d-1) n- >= n+, the inertial necessary condition for dimension d."""
    return (d - 1) * n_plus >= n_minus and (d - 1) * n_minus >= n_plus


def conjectured_inertial_holds(spectrum: Spectrum, ratio: Fraction) -> bool:
    """
    Whether d/r reaches the full inertial bound, the conjectured lower bound
    for the projective rank. A False is a counterexample, not an error.
    """
    return ratio >= inertial_value(spectrum.inertia)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    if d == 1:
        return np.array([[np.exp(2j * np.pi * rng.uniform())]])
    return unitary_group.rvs(d, random_state=rng)


def normalize_first_entries(
    g: Graph,
    rep: OrthoRepresentation,
    seed: int = 0,
    max_unitaries: int = 64,
    min_modulus: float = 1e-6,
) -> OrthoRepresentation:
    """
    Rotate by random unitaries until every first entry is away from zero, then
    rescale each vector so its first entry is exactly 1.

    Raises:
        ValidationError: if rep is not a valid certificate to begin with
        LimitExceededError: if no unitary in max_unitaries tries works
    """
    if rep.residual >= SUCCESS_TOLERANCE:
        raise ValidationError(f"residual {rep.residual:.3g} too large to normalise")
    rng = np.random.default_rng(seed)
    candidates = [np.eye(rep.dimension)] + [
        random_unitary(rep.dimension, rng) for _ in range(max_unitaries)
    ]
    for attempt, u in enumerate(candidates):
        y = rep.vectors @ u.T
        first = y[:, 0]
        if np.all(np.abs(first) > min_modulus):
            y = y / first[:, None]
            y[:, 0] = 1.0
            logger.debug("first entries normalised after %d unitaries", attempt)
            return OrthoRepresentation.from_vectors(g, y)
    raise LimitExceededError(f"no unitary in {max_unitaries} tries gave nonzero first entries")


def verify_conversion_identity(g: Graph, rep: OrthoRepresentation) -> float:
    """
    ||sum_{i>=2} D_i^dagger A D_i + A||_max with D_i = diag(x_v^i : v in V).

    Requires x_v^1 = 1 for every v, so that D_1 = I.
    """
    if rep.n != g.n:
        raise ValidationError(f"representation has {rep.n} vectors for {g.n} vertices")
    if not rep.has_unit_first_entries():
        raise ValidationError("conversion identity needs every first entry equal to 1")
    a = g.adjacency().astype(complex)
    total = a.copy()
    for i in range(1, rep.dimension):
        d_i = np.diag(rep.vectors[:, i])
        total += d_i.conj().T @ a @ d_i
    return float(np.max(np.abs(total))) if total.size else 0.0


# --- d/r representations ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProjectorRepresentation:
    """Rank-r orthogonal projectors P_v in dimension d, stacked as an (n, d, d) array."""

    dimension: int
    rank: int
    projectors: np.ndarray

    def __post_init__(self):
        projectors = np.array(self.projectors, dtype=complex)
        projectors.setflags(write=False)
        object.__setattr__(self, "projectors", projectors)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.dimension, self.rank)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectorRepresentation):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.rank == other.rank
            and np.array_equal(self.projectors, other.projectors)
        )

    __hash__ = None


@dataclass(frozen=True)
class DrVerification:
    """
    Attributes:
        valid: Every projector invariant holds and P(A (x) I)P = 0 with rank(P) = n r
        ratio: d / r; when valid this certifies xi^[r](g) <= d
        diagnostics: Human-readable reasons for rejection
        residuals: Worst Hermitian, idempotent, edge-product and block residuals
        block_rank: Numerical rank of the block-diagonal projector
        weaker_inertial_holds: d/r >= the projective-rank inertial bound (a theorem)
        conjecture_holds: d/r >= the full inertial bound (conjectured, only reported)
    """

    valid: bool
    ratio: Fraction
    diagnostics: Tuple[str, ...]
    residuals: Dict[str, float] = field(default_factory=dict)
    block_rank: int = 0
    weaker_inertial_holds: Optional[bool] = None
    conjecture_holds: Optional[bool] = None


def verify_dr_representation(g: Graph, rep: ProjectorRepresentation) -> DrVerification:
    """
    Check every projector invariant, then the block-diagonal identity
    P (A (x) I_d) P = 0 and rank(P) = n r.

    Raises:
        ValidationError: on dimension mismatches
        InconsistencyError: if a valid certificate contradicts the projective-rank bound
    """
    d, r = rep.dimension, rep.rank
    if rep.projectors.shape != (g.n, d, d):
        raise ValidationError(
            f"projectors have shape {rep.projectors.shape}, expected {(g.n, d, d)}"
        )
    if not 1 <= r <= d:
        raise ValidationError(f"rank {r} outside 1..{d}")

    diagnostics: List[str] = []
    hermitian = idempotent = 0.0
    for v, p in enumerate(rep.projectors):
        h = float(np.max(np.abs(p - p.conj().T)))
        i = float(np.max(np.abs(p @ p - p)))
        hermitian, idempotent = max(hermitian, h), max(idempotent, i)
        if h > 1e-10:
            diagnostics.append(f"P_{v} not Hermitian (residual {h:.3g})")
        if i > 1e-8:
            diagnostics.append(f"P_{v} not idempotent (residual {i:.3g})")
        actual = numerical_rank(p)
        if actual != r:
            diagnostics.append(f"P_{v} has rank {actual}, claimed {r}")

    products = 0.0
    for v, w in g.sorted_edges:
        x = float(np.max(np.abs(rep.projectors[v] @ rep.projectors[w])))
        products = max(products, x)
        if x > 1e-8:
            diagnostics.append(f"P_{v} P_{w} != 0 (residual {x:.3g})")

    if g.n * d <= BLOCK_SIZE_LIMIT:
        big_p = linalg.block_diag(*rep.projectors)
        lifted = np.kron(g.adjacency(), np.eye(d))
        block = float(np.max(np.abs(big_p @ lifted @ big_p)))
        block_rank = numerical_rank(big_p)
    else:
        # block (v, w) of P (A (x) I) P is a_vw P_v P_w, and the rank of a block-diagonal matrix
        # is the sum of the block ranks
        block = products
        block_rank = sum(numerical_rank(p) for p in rep.projectors)
    if block >= 1e-8:
        diagnostics.append(f"||P (A (x) I) P||_max = {block:.3g}")
    if block_rank != g.n * r:
        diagnostics.append(f"rank(P) = {block_rank}, expected n r = {g.n * r}")

    valid = not diagnostics
    spectrum = inertia(g)
    weaker_holds = rep.ratio >= weaker_inertial_value(spectrum.inertia)
    conjecture = conjectured_inertial_holds(spectrum, rep.ratio)
    if valid and not weaker_holds:
        raise InconsistencyError(
            f"valid {d}/{r}-representation beats the projective-rank inertial bound "
            f"{weaker_inertial_value(spectrum.inertia)}"
        )
    if valid and not conjecture:
        logger.warning(
            "%d/%d-representation of %s is below the inertial bound %s: conjecture counterexample",
            d,
            r,
            g.label(),
            inertial_value(spectrum.inertia),
        )
    return DrVerification(
        valid=valid,
        ratio=rep.ratio,
        diagnostics=tuple(diagnostics),
        residuals={
            "hermitian": hermitian,
            "idempotent": idempotent,
            "edge_products": products,
            "block": block,
        },
        block_rank=block_rank,
        weaker_inertial_holds=weaker_holds,
        conjecture_holds=conjecture,
    )


# --- JSON -------------------------------------------------------------------

Certificate = Union[OrthoRepresentation, ProjectorRepresentation]


def _encode(values: np.ndarray) -> list:
    if values.ndim == 0:
        z = complex(values)
        return [float(z.real), float(z.imag)]
    return [_encode(x) for x in values]


def _decode(data: list, depth: int) -> np.ndarray:
    arr = np.array(data, dtype=float)
    if arr.ndim != depth + 1 or arr.shape[-1] != 2:
        raise ValidationError(f"expected a depth-{depth} array of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def certificate_to_dict(g: Graph, cert: Certificate) -> dict:
    if isinstance(cert, OrthoRepresentation):
        return {
            "kind": "orthogonal-representation",
            "graph6": serialize_graph6(g),
            "dimension": cert.dimension,
            "normalized": cert.normalized,
            "residual": cert.residual,
            "vectors": _encode(cert.vectors),
        }
    return {
        "kind": "projector-representation",
        "graph6": serialize_graph6(g),
        "dimension": cert.dimension,
        "rank": cert.rank,
        "residual": max(
            (
                float(np.max(np.abs(cert.projectors[v] @ cert.projectors[w])))
                for v, w in g.sorted_edges
            ),
            default=0.0,
        ),
        "projectors": _encode(cert.projectors),
    }


def certificate_from_dict(data: dict) -> Tuple[Graph, Certificate]:
    try:
        g = parse_graph6(data["graph6"])
        kind = data["kind"]
        if kind == "orthogonal-representation":
            cert = OrthoRepresentation(
                dimension=int(data["dimension"]),
                vectors=_decode(data["vectors"], 2),
                residual=float(data["residual"]),
                normalized=bool(data.get("normalized", False)),
            )
        elif kind == "projector-representation":
            cert = ProjectorRepresentation(
                dimension=int(data["dimension"]),
                rank=int(data["rank"]),
                projectors=_decode(data["projectors"], 3),
            )
        else:
            raise ValidationError(f"unknown certificate kind {kind!r}")
    except KeyError as e:
        raise ValidationError(f"certificate is missing field {e}") from None
    return g, cert


def dump_certificate(g: Graph, cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(g, cert))


def load_certificate(text: str) -> Tuple[Graph, Certificate]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"certificate is not valid JSON: {e}") from None
    return certificate_from_dict(data)
