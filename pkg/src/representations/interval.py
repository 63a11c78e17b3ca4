import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from src.bounds import BoundNumber
from src.bounds.battery import BoundSet, evaluate_bounds
from src.errors import InconsistencyError
from src.graphs import Graph
from src.representations.certificates import OrthoRepresentation, inertial_condition_holds
from src.representations.search import SearchConfig, search_ortho_rep
from src.spectral import inertia

logger = logging.getLogger(__name__)

XI_LOWER_SOURCES = ("inertial", "hoffman", "lima", "kolotilina")
CEILING_SLACK = 1e-9


def bound_ceiling(value: BoundNumber) -> int:
    """Exact ceiling for rationals, ceil(x - 1e-9) for floats."""
    if isinstance(value, Fraction):
        return math.ceil(value)
    return math.ceil(value - CEILING_SLACK)


@dataclass(frozen=True)
class XiInterval:
    """
    lower <= xi(g) <= upper. upper is None when no dimension in the searched
    range produced a certificate, which is not evidence that xi is larger.
    """

    lower: BoundNumber
    lower_source: str
    lower_ceiling: int
    upper: Optional[int]
    certificate: Optional[OrthoRepresentation] = None

    @property
    def collapsed(self) -> bool:
        return self.upper is not None and self.upper == self.lower_ceiling


def xi_lower(bounds: BoundSet) -> Tuple[BoundNumber, str]:
    """
    The largest lower bound for xi. A float within CEILING_SLACK of an exact
    value is a tie, and the exact value wins.
    """
    named = bounds.named()
    best = max(float(named[name].value) for name in XI_LOWER_SOURCES)
    tied = [name for name in XI_LOWER_SOURCES if float(named[name].value) >= best - CEILING_SLACK]
    exact = [name for name in tied if isinstance(named[name].value, Fraction)]
    source = exact[0] if exact else max(tied, key=lambda name: named[name].value)
    return named[source].value, source


def xi_interval(
    g: Graph, cfg: Optional[SearchConfig] = None, bounds: Optional[BoundSet] = None
) -> XiInterval:
    """
    Sandwich the orthogonal rank between the best spectral lower bound and the
    smallest dimension in cfg.dimension_range where the search succeeds.

    Raises:
        InconsistencyError: if a certificate violates the inertial necessary condition
    """
    cfg = cfg or SearchConfig()
    bounds = bounds or evaluate_bounds(g)
    lower, source = xi_lower(bounds)
    ceiling = bound_ceiling(lower)
    n_plus, _, n_minus = inertia(g).inertia

    # no dimension below the proven lower bound can carry a certificate
    dimensions = [d for d in cfg.dimensions(g.n) if d >= ceiling]
    for d in dimensions:
        rep = search_ortho_rep(g, d, cfg)
        if rep is None:
            continue
        if not inertial_condition_holds(d, n_plus, n_minus):
            raise InconsistencyError(
                f"{d}-dimensional certificate for {g.label()} violates (d-1)n+ >= n- with "
                f"n+ = {n_plus}, n- = {n_minus}"
            )
        logger.info("xi(%s) in [%s, %d]", g.label(), lower, d)
        return XiInterval(lower, source, ceiling, d, rep)

    logger.info("xi(%s) >= %s; no certificate in dimensions %s", g.label(), lower, dimensions)
    return XiInterval(lower, source, ceiling, None)
