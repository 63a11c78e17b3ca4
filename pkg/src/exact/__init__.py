"""
Exact combinatorial ground truth for small graphs: chi, omega, alpha and chi_f.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from src.errors import InconsistencyError
from src.exact.cliques import complement_masks, maximum_clique
from src.exact.coloring import ColoringResult, chromatic_number
from src.exact.fractional import MAX_FRACTIONAL_VERTICES, fractional_coloring
from src.graphs import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CliqueNumbers:
    """omega and alpha; when not conclusive they are the best found, i.e. lower bounds."""

    omega: int
    alpha: int
    conclusive: bool


def clique_and_independence(g: Graph, budget: Optional[int] = None) -> CliqueNumbers:
    omega = maximum_clique(g.neighbor_masks, budget)
    alpha = maximum_clique(complement_masks(g.neighbor_masks), budget)
    return CliqueNumbers(omega.size, alpha.size, omega.conclusive and alpha.conclusive)


@dataclass(frozen=True)
class ExactLimits:
    coloring_budget: int = 2_000_000
    clique_budget: int = 2_000_000
    max_n_fractional: int = MAX_FRACTIONAL_VERTICES


@dataclass(frozen=True)
class ExactParams:
    """
    Exact parameters of one graph.

    chi is None when the colouring search was inconclusive (chi_bounds then
    brackets it); chi_f is None when the graph exceeds the LP size limit.
    """

    chi: Optional[int]
    omega: int
    alpha: int
    chi_f: Optional[Fraction]
    limits: ExactLimits
    chi_bounds: Tuple[int, int]
    cliques_conclusive: bool = True
    chi_f_skipped: Optional[str] = None

    @property
    def conclusive(self) -> bool:
        return self.chi is not None and self.cliques_conclusive


def _check(g: Graph, params: ExactParams) -> None:
    if not params.cliques_conclusive:
        return
    chi_f = params.chi_f
    if chi_f is not None:
        if not params.omega <= chi_f:
            raise InconsistencyError(f"omega {params.omega} > chi_f {chi_f} for {g.label()}")
        if chi_f < Fraction(g.n, params.alpha):
            raise InconsistencyError(f"chi_f {chi_f} < n/alpha for {g.label()}")
        if params.chi is not None and chi_f > params.chi:
            raise InconsistencyError(f"chi_f {chi_f} > chi {params.chi} for {g.label()}")
    if params.chi is not None and params.omega > params.chi:
        raise InconsistencyError(f"omega {params.omega} > chi {params.chi} for {g.label()}")


def compute_exact(g: Graph, limits: Optional[ExactLimits] = None) -> ExactParams:
    """Run every oracle within the given limits and cross-check omega <= chi_f <= chi."""
    limits = limits or ExactLimits()
    cliques = clique_and_independence(g, limits.clique_budget)
    coloring: ColoringResult = chromatic_number(g, limits.coloring_budget)
    chi_f, skipped = None, None
    if g.n <= limits.max_n_fractional:
        chi_f = fractional_coloring(g, limits.max_n_fractional).value
    else:
        skipped = f"n = {g.n} exceeds the fractional limit {limits.max_n_fractional}"
    params = ExactParams(
        chi=coloring.chi,
        omega=cliques.omega,
        alpha=cliques.alpha,
        chi_f=chi_f,
        limits=limits,
        chi_bounds=(coloring.lower, coloring.upper),
        cliques_conclusive=cliques.conclusive,
        chi_f_skipped=skipped,
    )
    _check(g, params)
    return params
