"""
Fractional chromatic number as the covering LP over maximal independent sets.

Restricting columns to maximal independent sets loses nothing: any fractional
colouring can move weight from an independent set to a maximal superset.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from src.errors import LimitExceededError
from src.exact.cliques import maximal_independent_sets
from src.exact.simplex import solve_covering_lp
from src.graphs import Graph

logger = logging.getLogger(__name__)

MAX_FRACTIONAL_VERTICES = 20


@dataclass(frozen=True)
class FractionalColoring:
    """
    Attributes:
        value: chi_f(g)
        weights: Nonzero weights y_S of an optimal fractional colouring
        clique_weights: An optimal fractional clique (dual), one entry per vertex
        independent_sets: Number of maximal independent sets used as LP columns
    """

    value: Fraction
    weights: Dict[Tuple[int, ...], Fraction]
    clique_weights: Tuple[Fraction, ...]
    independent_sets: int


def fractional_coloring(g: Graph, max_n: int = MAX_FRACTIONAL_VERTICES) -> FractionalColoring:
    """
    Raises:
        LimitExceededError: if g has more than max_n vertices
    """
    if g.n > max_n:
        raise LimitExceededError(
            f"fractional chromatic number limited to n <= {max_n}, got n = {g.n}"
        )
    sets = maximal_independent_sets(g)
    incidence = [[int(v in s) for s in sets] for v in range(g.n)]
    solution = solve_covering_lp(incidence)
    weights = {s: y for s, y in zip(sets, solution.primal) if y}
    logger.debug(
        "chi_f(%s) = %s over %d maximal independent sets", g.label(), solution.value, len(sets)
    )
    return FractionalColoring(solution.value, weights, solution.dual, len(sets))


def fractional_chromatic_number(g: Graph, max_n: int = MAX_FRACTIONAL_VERTICES) -> Fraction:
    return fractional_coloring(g, max_n).value
