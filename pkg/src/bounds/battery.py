import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from src.bounds import BoundTarget, BoundValue, SpectralBound, SpectralProfile
from src.bounds.eigenvalue import GeneralizedBound, HoffmanBound, KolotilinaBound, LimaBound
from src.bounds.inertial import InertialBound, WeakerInertialBound
from src.bounds.weighted import WeightedHoffmanResult, WeightedSearchOptions, search_with
from src.errors import BoundUndefinedError, InconsistencyError
from src.graphs import Graph

logger = logging.getLogger(__name__)

CLOSED_FORM_BOUNDS: Tuple[SpectralBound, ...] = (
    HoffmanBound(),
    LimaBound(),
    KolotilinaBound(),
    InertialBound(),
    WeakerInertialBound(),
)


@dataclass(frozen=True)
class BoundSet:
    """Every bound evaluated for one graph, each tagged with what it lower-bounds."""

    hoffman: BoundValue
    lima: BoundValue
    kolotilina: BoundValue
    inertial: BoundValue
    weaker_inertial: BoundValue
    generalized: Optional[Dict[str, BoundValue]] = None
    weighted_hoffman: Optional[WeightedHoffmanResult] = None

    def named(self) -> Dict[str, BoundValue]:
        values = {
            b.name: b
            for b in (self.hoffman, self.lima, self.kolotilina, self.inertial, self.weaker_inertial)
        }
        for b in (self.generalized or {}).values():
            values[b.name] = b
        if self.weighted_hoffman is not None:
            values["weighted_hoffman"] = self.weighted_hoffman.as_bound()
        return values

    @property
    def target_note(self) -> Dict[str, BoundTarget]:
        return {name: b.target for name, b in self.named().items()}

    def chi_vect_bounds(self) -> Dict[str, BoundValue]:
        return {k: b for k, b in self.named().items() if b.target is BoundTarget.CHI_VECT}


def evaluate_bounds(
    g: Graph,
    tol: Optional[float] = None,
    generalized: Iterable[str] = (),
    weighted: Optional[WeightedSearchOptions] = None,
    profile: Optional[SpectralProfile] = None,
) -> BoundSet:
    """
    Run the closed-form bounds, the requested E-presets and, optionally, the
    weighted Hoffman search.
    """
    profile = profile or SpectralProfile.of(g, tol)
    values = {bound.name: bound.evaluate(profile) for bound in CLOSED_FORM_BOUNDS}
    if values["weaker_inertial"].value > values["inertial"].value:
        raise InconsistencyError(
            f"weaker inertial {values['weaker_inertial'].value} exceeds inertial "
            f"{values['inertial'].value}"
        )

    generalized = tuple(generalized)
    shifted = {}
    for preset in generalized:
        bound = GeneralizedBound(preset)
        try:
            shifted[preset] = bound.evaluate(profile)
        except BoundUndefinedError as e:
            logger.warning("%s skipped for %s: %s", bound.name, g.label(), e)

    return BoundSet(
        **values,
        generalized=shifted if generalized else None,
        weighted_hoffman=search_with(g, weighted),
    )
