"""
Exact rational covering LP

    minimise c.y  subject to  A y >= b,  y >= 0,   with c >= 0,

solved by the dual simplex method on a Fraction tableau. The all-slack basis
is dual feasible because c >= 0, so no phase one is needed. Pivoting follows
Bland's rule (leave: lowest-index infeasible basic variable; enter: minimum
ratio, lowest index on ties), which rules out cycling.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.errors import InconsistencyError, ValidationError

logger = logging.getLogger(__name__)


class InfeasibleLP(ValidationError):
    """Raised when some covering row cannot be satisfied."""


@dataclass(frozen=True)
class CoveringSolution:
    """
    Optimal primal and dual solutions.

    Attributes:
        value: Optimal objective (equal for primal and dual)
        primal: y, one entry per column
        dual: pi >= 0 with pi.A_j <= c_j for every column j, one entry per row
        pivots: Number of pivots performed
    """

    value: Fraction
    primal: Tuple[Fraction, ...]
    dual: Tuple[Fraction, ...]
    pivots: int


def _as_fractions(values: Sequence) -> List[Fraction]:
    return [Fraction(x) for x in values]


def solve_covering_lp(
    a: Sequence[Sequence[int]],
    b: Optional[Sequence] = None,
    c: Optional[Sequence] = None,
) -> CoveringSolution:
    """
    Solve min c.y s.t. A y >= b, y >= 0 exactly; b and c default to all ones.

    Raises:
        ValidationError: on ragged input or a negative cost
        InfeasibleLP: if the constraints cannot be met
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ValidationError("constraint matrix is ragged")
    b = _as_fractions(b if b is not None else [1] * rows)
    c = _as_fractions(c if c is not None else [1] * cols)
    if len(b) != rows or len(c) != cols:
        raise ValidationError("b / c sizes do not match the constraint matrix")
    if any(x < 0 for x in c):
        raise ValidationError("costs must be nonnegative for the dual simplex start")

    width = cols + rows
    tableau = [
        [Fraction(-x) for x in a[i]] + [Fraction(int(j == i)) for j in range(rows)]
        for i in range(rows)
    ]
    rhs = [-x for x in b]
    reduced = c + [Fraction(0)] * rows
    objective = Fraction(0)
    basis = [cols + i for i in range(rows)]
    pivots = 0

    while True:
        infeasible = [i for i in range(rows) if rhs[i] < 0]
        if not infeasible:
            break
        r = min(infeasible, key=lambda i: basis[i])
        row = tableau[r]
        entering, best_ratio = None, None
        for j in range(width):
            if row[j] < 0:
                ratio = reduced[j] / -row[j]
                if best_ratio is None or ratio < best_ratio:
                    entering, best_ratio = j, ratio
        if entering is None:
            raise InfeasibleLP(f"row {r} of the covering LP cannot be satisfied")

        pivot = row[entering]
        row = [x / pivot for x in row]
        rhs[r] /= pivot
        tableau[r] = row
        for i in range(rows):
            f = tableau[i][entering]
            if i != r and f:
                tableau[i] = [x - f * y for x, y in zip(tableau[i], row)]
                rhs[i] -= f * rhs[r]
        f = reduced[entering]
        if f:
            reduced = [x - f * y for x, y in zip(reduced, row)]
            objective += f * rhs[r]
        basis[r] = entering
        pivots += 1

    primal = [Fraction(0)] * cols
    for i, j in enumerate(basis):
        if j < cols:
            primal[j] = rhs[i]
    dual = reduced[cols:]
    _check_optimality(a, b, c, primal, dual, objective)
    logger.debug("covering LP %dx%d solved in %d pivots: %s", rows, cols, pivots, objective)
    return CoveringSolution(objective, tuple(primal), tuple(dual), pivots)


def _check_optimality(a, b, c, primal, dual, objective) -> None:
    rows, cols = len(a), len(c)
    primal_value = sum((c[j] * primal[j] for j in range(cols)), Fraction(0))
    dual_value = sum((b[i] * dual[i] for i in range(rows)), Fraction(0))
    if primal_value != objective or dual_value != objective:
        raise InconsistencyError(
            f"LP values disagree: primal {primal_value}, dual {dual_value}, tableau {objective}"
        )
    if any(y < 0 for y in primal) or any(z < 0 for z in dual):
        raise InconsistencyError("LP solution has a negative entry")
    for i in range(rows):
        if sum((a[i][j] * primal[j] for j in range(cols)), Fraction(0)) < b[i]:
            raise InconsistencyError(f"primal solution violates covering row {i}")
    for j in range(cols):
        if sum((a[i][j] * dual[i] for i in range(rows)), Fraction(0)) > c[j]:
            raise InconsistencyError(f"dual solution violates packing column {j}")
