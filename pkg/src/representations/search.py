"""
Heuristic search for orthogonal representations.

Both searches minimise f(X) = sum over edges of |x_v^dagger x_w|^2. A found
representation certifies xi(g) <= d (or xi'(g) <= d for the phase-only
search); a failed search certifies nothing.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy import linalg
from scipy.optimize import least_squares

from src.errors import InconsistencyError, ValidationError
from src.graphs import Graph
from src.representations.certificates import (
    ACCEPT_TOLERANCE,
    SUCCESS_TOLERANCE,
    OrthoRepresentation,
    edge_residual,
    verify_orthogonal_representation,
)

logger = logging.getLogger(__name__)

MONOTONE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    """
    Attributes:
        restarts: Seeded random starts per dimension
        max_iters: Sweeps (alternating search) or function evaluations (phase search) per start
        seed: Root seed; restart i uses the i-th spawned child stream
        success_tolerance: Largest accepted max-edge residual
        dimension_range: Inclusive dimensions tried by xi_interval; None as upper end means n
        stall_sweeps: Consecutive sweeps without relative progress before a start is abandoned
    """

    restarts: int = 32
    max_iters: int = 2000
    seed: int = 0
    success_tolerance: float = SUCCESS_TOLERANCE
    dimension_range: Tuple[int, Optional[int]] = (1, None)
    stall_sweeps: int = 25

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValidationError("restarts and max_iters must be positive")
        if not self.success_tolerance > 0:
            raise ValidationError("success_tolerance must be positive")
        lo, hi = self.dimension_range
        if lo < 1 or (hi is not None and hi < lo):
            raise ValidationError(f"bad dimension range {self.dimension_range}")

    def dimensions(self, n: int) -> range:
        lo, hi = self.dimension_range
        return range(lo, (hi if hi is not None else max(n, 1)) + 1)

    def streams(self) -> List[np.random.SeedSequence]:
        return np.random.SeedSequence(self.seed).spawn(self.restarts)


@dataclass(frozen=True)
class DescentResult:
    vectors: np.ndarray
    residual: float
    history: Tuple[float, ...] = field(repr=False)
    sweeps: int = 0
    stalled: bool = False


def objective(g: Graph, vectors: np.ndarray) -> float:
    if g.m == 0:
        return 0.0
    e = np.array(g.sorted_edges)
    products = np.einsum("ij,ij->i", vectors[e[:, 0]].conj(), vectors[e[:, 1]])
    return float(np.sum(np.abs(products) ** 2))


def random_start(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def alternating_descent(
    g: Graph,
    start: np.ndarray,
    max_iters: int = 2000,
    success_tolerance: float = SUCCESS_TOLERANCE,
    stall_sweeps: int = 25,
) -> DescentResult:
    """
    Replace each x_v in turn by a unit eigenvector of M_v = sum_{w ~ v} x_w x_w^dagger
    for its smallest eigenvalue, which minimises f exactly in x_v.

    Stops once the residual is far below success_tolerance, after stall_sweeps
    sweeps without relative progress, or after max_iters sweeps.

    Raises:
        InconsistencyError: if a sweep increases f
    """
    x = np.array(start, dtype=complex)
    neighbors = [np.array(sorted(g.neighbors[v]), dtype=int) for v in range(g.n)]
    polish = success_tolerance * 1e-4
    f_prev = objective(g, x)
    history = [f_prev]
    stalled_for = 0
    residual = edge_residual(g, x)
    sweeps = 0
    for sweeps in range(1, max_iters + 1):
        for v in range(g.n):
            nb = neighbors[v]
            if nb.size == 0:
                continue
            y = x[nb]
            m_v = y.T @ y.conj()
            _, vecs = linalg.eigh(m_v, subset_by_index=[0, 0])
            x[v] = vecs[:, 0]
        f = objective(g, x)
        history.append(f)
        if f > f_prev + MONOTONE_TOLERANCE * max(1.0, f_prev):
            raise InconsistencyError(f"alternating sweep increased f from {f_prev!r} to {f!r}")
        residual = edge_residual(g, x)
        if residual < polish:
            break
        stalled_for = stalled_for + 1 if f_prev - f <= 1e-10 * f_prev else 0
        if stalled_for >= stall_sweeps:
            return DescentResult(x, residual, tuple(history), sweeps, stalled=True)
        f_prev = f
    return DescentResult(x, residual, tuple(history), sweeps)


def _accept(g: Graph, rep: OrthoRepresentation, what: str) -> Optional[OrthoRepresentation]:
    check = verify_orthogonal_representation(g, rep, ACCEPT_TOLERANCE)
    if check.valid:
        return rep
    logger.warning("%s certificate for %s failed re-verification: %s", what, g.label(), check.diagnostics)
    return None


def _trivial(g: Graph, d: int, normalized: bool) -> OrthoRepresentation:
    vectors = np.full((g.n, d), d**-0.5, dtype=complex) if normalized else np.eye(1, d, dtype=complex).repeat(g.n, 0)
    return OrthoRepresentation(d, vectors, 0.0, normalized)


def search_ortho_rep(g: Graph, d: int, cfg: Optional[SearchConfig] = None) -> Optional[OrthoRepresentation]:
    """
    Look for a d-dimensional orthogonal representation by alternating
    minimisation from seeded random complex Gaussian starts.

    Returns:
        A re-verified representation with residual < cfg.success_tolerance, or None
    """
    cfg = cfg or SearchConfig()
    if d < 1:
        raise ValidationError(f"dimension must be positive, got {d}")
    if g.m == 0:
        return _trivial(g, d, normalized=False)
    for restart, stream in enumerate(cfg.streams()):
        rng = np.random.default_rng(stream)
        result = alternating_descent(
            g,
            random_start(g.n, d, rng),
            cfg.max_iters,
            cfg.success_tolerance,
            cfg.stall_sweeps,
        )
        logger.debug(
            "d=%d restart %d: residual %.3g after %d sweeps%s",
            d,
            restart,
            result.residual,
            result.sweeps,
            " (stalled)" if result.stalled else "",
        )
        if result.residual < cfg.success_tolerance:
            rep = _accept(g, OrthoRepresentation.from_vectors(g, result.vectors), "orthogonal")
            if rep is not None:
                logger.info("found %d-dimensional representation of %s at restart %d", d, g.label(), restart)
                return rep
    logger.info("no %d-dimensional representation of %s in %d restarts", d, g.label(), cfg.restarts)
    return None


# --- phase-only search ------------------------------------------------------


def phase_vectors(phases: np.ndarray, n: int, d: int) -> np.ndarray:
    return np.exp(1j * phases.reshape(n, d)) / np.sqrt(d)


def _phase_residuals(phases, n, d, rows, cols):
    x = phase_vectors(phases, n, d)
    products = np.sum(x[rows].conj() * x[cols], axis=1)
    return np.concatenate([products.real, products.imag])


def _phase_jacobian(phases, n, d, rows, cols):
    # d(x_v^dagger x_w)/d(phi_vk) = -i conj(x_vk) x_wk, d/d(phi_wk) = +i conj(x_vk) x_wk
    x = phase_vectors(phases, n, d)
    t = x[rows].conj() * x[cols]
    m = len(rows)
    jac = np.zeros((m, n * d), dtype=complex)
    k = np.arange(d)
    e = np.arange(m)[:, None]
    jac[e, rows[:, None] * d + k] += -1j * t
    jac[e, cols[:, None] * d + k] += 1j * t
    return np.vstack([jac.real, jac.imag])


def search_normalized_rep(g: Graph, d: int, cfg: Optional[SearchConfig] = None) -> Optional[OrthoRepresentation]:
    """
    Look for a representation whose entries all have modulus d^(-1/2) by
    optimising the phase angles only, from seeded random phases.

    Returns:
        A re-verified representation with the normalized flag set, or None
    """
    cfg = cfg or SearchConfig()
    if d < 1:
        raise ValidationError(f"dimension must be positive, got {d}")
    if g.m == 0:
        return _trivial(g, d, normalized=True)
    e = np.array(g.sorted_edges)
    rows, cols = e[:, 0], e[:, 1]
    for restart, stream in enumerate(cfg.streams()):
        rng = np.random.default_rng(stream)
        start = rng.uniform(0.0, 2 * np.pi, g.n * d)
        fit = least_squares(
            _phase_residuals,
            start,
            jac=_phase_jacobian,
            args=(g.n, d, rows, cols),
            method="trf",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=cfg.max_iters,
        )
        vectors = phase_vectors(fit.x, g.n, d)
        residual = edge_residual(g, vectors)
        logger.debug("phase search d=%d restart %d: residual %.3g", d, restart, residual)
        if residual < cfg.success_tolerance:
            rep = _accept(g, OrthoRepresentation(d, vectors, residual, normalized=True), "normalized")
            if rep is not None:
                logger.info("found normalized %d-dimensional representation of %s", d, g.label())
                return rep
    logger.info("no normalized %d-dimensional representation of %s", d, g.label())
    return None
