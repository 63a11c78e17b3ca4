"""
Hand-constructed d/r-representations used as shipped certificates.
"""
from typing import Iterable, Sequence, Tuple

import numpy as np

from src.errors import ValidationError
from src.graphs import Graph, kneser_vertices
from src.representations.certificates import OrthoRepresentation, ProjectorRepresentation


def coordinate_projectors(supports: Sequence[Iterable[int]], d: int) -> ProjectorRepresentation:
    """P_v projects onto the coordinate subspace spanned by e_i, i in supports[v]."""
    supports = [sorted(set(s)) for s in supports]
    ranks = {len(s) for s in supports}
    if len(ranks) != 1:
        raise ValidationError(f"supports have differing sizes {sorted(ranks)}")
    projectors = np.zeros((len(supports), d, d), dtype=complex)
    for v, s in enumerate(supports):
        if any(not 0 <= i < d for i in s):
            raise ValidationError(f"support {s} of vertex {v} leaves dimension {d}")
        projectors[v, s, s] = 1.0
    return ProjectorRepresentation(d, ranks.pop(), projectors)


def cycle_projectors(k: int) -> ProjectorRepresentation:
    """
    (2k+1)/k-representation of C_{2k+1}: vertex v gets coordinates
    kv, ..., kv+k-1 (mod 2k+1), so consecutive vertices get disjoint blocks.
    """
    if k < 1:
        raise ValidationError(f"k must be positive, got {k}")
    d = 2 * k + 1
    return coordinate_projectors([[(k * v + i) % d for i in range(k)] for v in range(d)], d)


def kneser_projectors(p: int, k: int) -> ProjectorRepresentation:
    """p/k-representation of Kneser(p, k): each k-subset projects onto its own coordinates."""
    return coordinate_projectors(kneser_vertices(p, k), p)


def projectors_from_vectors(rep: OrthoRepresentation) -> ProjectorRepresentation:
    """d/1-representation x_v x_v^dagger / |x_v|^2."""
    x = rep.vectors / np.linalg.norm(rep.vectors, axis=1, keepdims=True)
    return ProjectorRepresentation(rep.dimension, 1, np.einsum("vi,vj->vij", x, x.conj()))


def projectors_from_coloring(g: Graph, coloring: Sequence[int]) -> ProjectorRepresentation:
    """chi/1-representation: colour class c maps to e_c e_c^dagger."""
    if len(coloring) != g.n:
        raise ValidationError(f"colouring has {len(coloring)} entries for {g.n} vertices")
    d = max(coloring, default=-1) + 1
    return coordinate_projectors([[c] for c in coloring], max(d, 1))


def shipped_certificates() -> Tuple[Tuple[str, ProjectorRepresentation], ...]:
    """Family spec and certificate pairs for the bundled d/r-representations."""
    return (
        ("cycle:5", cycle_projectors(2)),
        ("cycle:7", cycle_projectors(3)),
        ("cycle:9", cycle_projectors(4)),
        ("kneser:5,2", kneser_projectors(5, 2)),
        ("kneser:6,2", kneser_projectors(6, 2)),
        ("kneser:7,3", kneser_projectors(7, 3)),
    )
