"""
Eigenvalue bounds of Hoffman, Lima and Kolotilina, and the diagonal-shift family

    c >= 1 + lmax(A) / (lmax(A) - lmax(E + A) + lmax(E - A))

which gives Hoffman at E = 0 and Kolotilina at E = D. All of them lower-bound
the vectorial chromatic number and therefore the orthogonal rank.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, Sequence, Union

import numpy as np
from scipy import linalg

from src.bounds import BoundTarget, BoundValue, SpectralBound, SpectralProfile
from src.errors import BoundUndefinedError, ValidationError
from src.graphs import Graph
from src.spectral import Spectrum

logger = logging.getLogger(__name__)


def _degenerate(name: str, matrix: str) -> BoundValue:
    return BoundValue(name, Fraction(1), BoundTarget.CHI_VECT, matrix, degenerate=True)


def hoffman_bound(s: Spectrum) -> BoundValue:
    """1 + mu_1 / |mu_n| of an adjacency spectrum."""
    if s.inertia.negative == 0:
        return _degenerate("hoffman", str(s.matrix))
    value = 1.0 + s.largest / abs(s.smallest)
    return BoundValue("hoffman", value, BoundTarget.CHI_VECT, str(s.matrix))


def lima_bound(g: Graph, s: Spectrum) -> BoundValue:
    """
    1 + 2m / (2m - n * delta_n), delta_n the least signless Laplacian eigenvalue.

    Raises:
        BoundUndefinedError: if 2m - n * delta_n <= 0
    """
    if g.m == 0:
        return _degenerate("lima", "signless-laplacian")
    denominator = 2 * g.m - g.n * s.smallest
    if denominator <= 0:
        raise BoundUndefinedError(f"lima bound undefined: 2m - n*delta_n = {denominator:.3g}")
    return BoundValue(
        "lima", 1.0 + 2 * g.m / denominator, BoundTarget.CHI_VECT, "signless-laplacian"
    )


def kolotilina_bound(s_adj: Spectrum, s_lap: Spectrum, s_signless: Spectrum) -> BoundValue:
    """
    1 + mu_1 / (mu_1 - delta_1 + theta_1).

    Raises:
        BoundUndefinedError: if the denominator is not positive
    """
    matrix = "adjacency+laplacian+signless-laplacian"
    if s_adj.inertia.negative == 0:
        return _degenerate("kolotilina", matrix)
    mu_1 = s_adj.largest
    denominator = mu_1 - s_signless.largest + s_lap.largest
    if denominator <= 0:
        raise BoundUndefinedError(f"kolotilina bound undefined: denominator {denominator:.3g}")
    return BoundValue("kolotilina", 1.0 + mu_1 / denominator, BoundTarget.CHI_VECT, matrix)


def _lmax(m: np.ndarray) -> float:
    return float(linalg.eigvalsh(m)[-1])


def generalized_bound(
    g: Graph, e: Union[np.ndarray, Sequence[float]], label: str = "E"
) -> BoundValue:
    """
    Diagonal-shift bound for a real diagonal E, given as a vector or a diagonal matrix.

    Raises:
        ValidationError: if E is not a real diagonal of size n
        BoundUndefinedError: if the denominator is not positive for this E
    """
    e = np.asarray(e)
    if e.ndim == 2:
        if e.shape != (g.n, g.n) or np.any(e - np.diag(np.diag(e))):
            raise ValidationError("E must be an n x n diagonal matrix")
        e = np.diag(e)
    if e.shape != (g.n,) or np.iscomplexobj(e) and np.any(np.imag(e)):
        raise ValidationError(f"E must be a real diagonal of size {g.n}")
    e = np.real(e).astype(float)
    name = f"generalized[{label}]"
    if g.m == 0:
        return _degenerate(name, f"adjacency, E={label}")
    a = g.adjacency()
    big_e = np.diag(e)
    mu_1 = _lmax(a)
    denominator = mu_1 - _lmax(big_e + a) + _lmax(big_e - a)
    if denominator <= 0:
        raise BoundUndefinedError(
            f"bound undefined for this E ({label}): denominator {denominator:.3g}"
        )
    return BoundValue(name, 1.0 + mu_1 / denominator, BoundTarget.CHI_VECT, f"adjacency, E={label}")


GENERALIZED_PRESETS: Dict[str, Callable[[Graph], np.ndarray]] = {
    "zero": lambda g: np.zeros(g.n),
    "degree": lambda g: np.asarray(g.degrees, dtype=float),
    "identity": lambda g: np.ones(g.n),
    "half-degree": lambda g: np.asarray(g.degrees, dtype=float) / 2,
}


class HoffmanBound(SpectralBound):
    name = "hoffman"
    target = BoundTarget.CHI_VECT

    def evaluate(self, profile: SpectralProfile) -> BoundValue:
        return hoffman_bound(profile.adjacency)


class LimaBound(SpectralBound):
    name = "lima"
    target = BoundTarget.CHI_VECT

    def evaluate(self, profile: SpectralProfile) -> BoundValue:
        return lima_bound(profile.graph, profile.signless)


class KolotilinaBound(SpectralBound):
    name = "kolotilina"
    target = BoundTarget.CHI_VECT

    def evaluate(self, profile: SpectralProfile) -> BoundValue:
        return kolotilina_bound(profile.adjacency, profile.laplacian, profile.signless)


class GeneralizedBound(SpectralBound):
    """The diagonal-shift bound for one named choice of E."""

    target = BoundTarget.CHI_VECT

    def __init__(self, preset: str):
        if preset not in GENERALIZED_PRESETS:
            raise ValidationError(
                f"unknown E preset {preset!r}; choose from {sorted(GENERALIZED_PRESETS)}"
            )
        self.preset = preset
        self.name = f"generalized[{preset}]"

    def evaluate(self, profile: SpectralProfile) -> BoundValue:
        g = profile.graph
        return generalized_bound(g, GENERALIZED_PRESETS[self.preset](g), label=self.preset)
