"""
Local search for a good edge weighting W in the weighted Hoffman bound

    1 + mu_1(W o A) / |mu_n(W o A)|.

Every Hermitian W gives a valid lower bound for the vectorial chromatic number,
and the supremum over W is the strict vector chromatic number, so any weights
the search ends on are sound. With nonnegative real weights the value also
lower-bounds the vector chromatic number and hence chi_f.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

import numpy as np
from scipy import linalg

from src.bounds import BoundTarget, BoundValue
from src.graphs import Edge, Graph
from src.spectral import MatrixKind, build_matrix

logger = logging.getLogger(__name__)

MIN_STEP = 1e-6


@dataclass(frozen=True)
class WeightedHoffmanResult:
    """
    Best weighting found.

    Attributes:
        value: Weighted Hoffman bound for the returned weights
        weights: Edge weights (floats, or complex when the search was Hermitian)
        nonnegative: True when every weight is a nonnegative real
        restart: Index of the start that produced the best value (0 is all-ones)
        evaluations: Number of objective evaluations across all starts
    """

    value: float
    weights: Dict[Edge, complex] = field(compare=False)
    nonnegative: bool
    restart: int
    evaluations: int

    def as_bound(self) -> BoundValue:
        return BoundValue(
            "weighted_hoffman",
            self.value,
            BoundTarget.CHI_VECT,
            "weighted-adjacency",
            degenerate=not self.weights,
        )


def weighted_hoffman_value(g: Graph, weights: Mapping[Edge, complex]) -> float:
    """Evaluate the weighted Hoffman bound by building W o A from scratch."""
    m = build_matrix(g, MatrixKind.weighted(weights))
    values = linalg.eigvalsh(m)
    if values[0] >= 0:
        return 1.0
    return 1.0 + float(values[-1]) / abs(float(values[0]))


class _Objective:
    """Vectorised objective over the edge-weight vector of one graph."""

    def __init__(self, g: Graph, hermitian: bool):
        self.n = g.n
        edges = np.array(g.sorted_edges)
        self.rows, self.cols = edges[:, 0], edges[:, 1]
        self.dtype = complex if hermitian else float
        self.evaluations = 0

    def __call__(self, w: np.ndarray) -> float:
        self.evaluations += 1
        m = np.zeros((self.n, self.n), dtype=self.dtype)
        m[self.rows, self.cols] = w
        m[self.cols, self.rows] = np.conj(w)
        values = linalg.eigvalsh(m)
        if values[0] >= 0:
            return 1.0
        return 1.0 + values[-1] / abs(values[0])


def _local_search(
    objective: _Objective,
    w: np.ndarray,
    rng: np.random.Generator,
    iters: int,
    step: float,
    hermitian: bool,
):
    best = objective(w)
    m = len(w)
    improved_in_sweep = False
    for it in range(iters):
        e = it % m
        trial = w.copy()
        trial[e] *= np.exp(step * rng.standard_normal())
        if hermitian:
            trial[e] *= np.exp(1j * step * rng.standard_normal())
        value = objective(trial)
        if value > best:
            w, best = trial / np.max(np.abs(trial)), value
            improved_in_sweep = True
        if e == m - 1:
            if not improved_in_sweep:
                step /= 2
                if step < MIN_STEP:
                    break
            improved_in_sweep = False
    return best, w


def optimize_weighted_hoffman(
    g: Graph,
    seed: int = 0,
    iters: int = 200,
    restarts: int = 4,
    hermitian: bool = False,
    step: float = 0.5,
) -> WeightedHoffmanResult:
    """
    Coordinate-wise multiplicative local search from the all-ones weighting,
    plus `restarts` seeded random positive starts.

    Args:
        g: Graph to weight
        seed: Master seed; each start gets its own derived stream
        iters: Proposals per start
        restarts: Random starts in addition to the all-ones start
        hermitian: Also perturb complex phases (result may lose the chi_f tag)
        step: Initial log-scale perturbation size, halved after an unproductive sweep

    Returns:
        WeightedHoffmanResult: never below the unweighted Hoffman value
    """
    if g.m == 0:
        return WeightedHoffmanResult(1.0, {}, True, 0, 0)
    objective = _Objective(g, hermitian)
    streams = np.random.SeedSequence(seed).spawn(restarts + 1)
    best_value, best_w, best_restart = -np.inf, None, 0
    for r, stream in enumerate(streams):
        rng = np.random.default_rng(stream)
        if r == 0:
            start = np.ones(g.m, dtype=objective.dtype)
        else:
            start = rng.uniform(0.5, 1.5, g.m).astype(objective.dtype)
            if hermitian:
                start = start * np.exp(1j * rng.uniform(0, 2 * np.pi, g.m))
        value, w = _local_search(objective, start, rng, iters, step, hermitian)
        logger.debug("weighted hoffman start %d: %.9g", r, value)
        if value > best_value:
            best_value, best_w, best_restart = value, w, r

    if hermitian:
        weights = {e: complex(x) for e, x in zip(g.sorted_edges, best_w)}
        nonnegative = all(x.imag == 0 and x.real >= 0 for x in weights.values())
    else:
        weights = {e: float(x) for e, x in zip(g.sorted_edges, best_w)}
        nonnegative = all(x >= 0 for x in weights.values())
    return WeightedHoffmanResult(
        value=float(best_value),
        weights=weights,
        nonnegative=nonnegative,
        restart=best_restart,
        evaluations=objective.evaluations,
    )


@dataclass(frozen=True)
class WeightedSearchOptions:
    seed: int = 0
    iters: int = 200
    restarts: int = 4
    hermitian: bool = False


def search_with(g: Graph, options: Optional[WeightedSearchOptions]) -> Optional[WeightedHoffmanResult]:
    if options is None:
        return None
    return optimize_weighted_hoffman(
        g,
        seed=options.seed,
        iters=options.iters,
        restarts=options.restarts,
        hermitian=options.hermitian,
    )
