import logging
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

from src.exact.cliques import BudgetExhausted, maximum_clique
from src.graphs import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColoringResult:
    """
    Outcome of the exact colouring search.

    chi is None when the node budget ran out; lower and upper then bracket it
    and coloring is a proper colouring with `upper` colours.
    """

    chi: Optional[int]
    lower: int
    upper: int
    coloring: Tuple[int, ...]
    nodes: int

    @property
    def conclusive(self) -> bool:
        return self.chi is not None


def dsatur_coloring(g: Graph) -> Tuple[List[int], int]:
    """Greedy DSATUR colouring; ties broken by degree, then lowest index."""
    colors = [-1] * g.n
    seen: List[Set[int]] = [set() for _ in range(g.n)]
    uncolored = set(range(g.n))
    while uncolored:
        v = max(uncolored, key=lambda u: (len(seen[u]), g.degrees[u], -u))
        c = 0
        while c in seen[v]:
            c += 1
        colors[v] = c
        uncolored.remove(v)
        for w in g.neighbors[v]:
            seen[w].add(c)
    return colors, (max(colors) + 1 if colors else 0)


def chromatic_number(g: Graph, budget: int = 2_000_000) -> ColoringResult:
    """
    Exact chromatic number by DSATUR branch and bound.

    A maximum clique gives the lower bound and is precoloured 0..omega-1;
    greedy DSATUR gives the first upper bound. Never returns a wrong chi:
    if the budget runs out the result is inconclusive.
    """
    clique = maximum_clique(g.neighbor_masks, budget)
    lower = max(clique.size, 1)
    best_colors, best_k = dsatur_coloring(g)
    nodes = clique.nodes
    if best_k == lower:
        return ColoringResult(best_k, lower, best_k, tuple(best_colors), nodes)

    colors = [-1] * g.n
    seen: List[Set[int]] = [set() for _ in range(g.n)]

    def assign(v: int, c: int) -> List[int]:
        colors[v] = c
        changed = []
        for w in g.neighbors[v]:
            if colors[w] == -1 and c not in seen[w]:
                seen[w].add(c)
                changed.append(w)
        return changed

    def unassign(v: int, c: int, changed: List[int]) -> None:
        colors[v] = -1
        for w in changed:
            seen[w].discard(c)

    for i, v in enumerate(clique.members):
        assign(v, i)

    def backtrack(current_k: int) -> None:
        nonlocal best_k, best_colors, nodes
        if best_k == lower:
            return
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted
        uncolored = [u for u in range(g.n) if colors[u] == -1]
        if not uncolored:
            if current_k < best_k:
                best_k, best_colors = current_k, colors[:]
            return
        v = max(uncolored, key=lambda u: (len(seen[u]), g.degrees[u], -u))
        for c in range(current_k + 1):
            if c in seen[v]:
                continue
            new_k = max(current_k, c + 1)
            if new_k >= best_k:
                continue
            changed = assign(v, c)
            backtrack(new_k)
            unassign(v, c, changed)

    try:
        backtrack(clique.size)
    except BudgetExhausted:
        logger.warning(
            "colouring search for %s stopped after %d nodes: %d <= chi <= %d",
            g.label(),
            nodes,
            lower,
            best_k,
        )
        return ColoringResult(None, lower, best_k, tuple(best_colors), nodes)
    return ColoringResult(best_k, lower, best_k, tuple(best_colors), nodes)
