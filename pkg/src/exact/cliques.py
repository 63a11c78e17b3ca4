"""Clique search over integer-bitset neighbourhoods."""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from src.graphs import Graph

logger = logging.getLogger(__name__)


class BudgetExhausted(Exception):
    """Internal signal used to unwind a search that ran out of nodes."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> Tuple[int, ...]:
    return tuple(iter_bits(mask))


def complement_masks(masks: Sequence[int]) -> List[int]:
    full = (1 << len(masks)) - 1
    return [full & ~m & ~(1 << v) for v, m in enumerate(masks)]


def maximal_independent_sets(g: Graph) -> List[Tuple[int, ...]]:
    """All maximal independent sets of g, each sorted, in lexicographic order."""
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(nx.complement(g.to_networkx())))


@dataclass(frozen=True)
class CliqueSearch:
    size: int
    members: Tuple[int, ...]
    conclusive: bool
    nodes: int


def _color_classes(p: int, masks: Sequence[int]) -> Tuple[List[int], List[int]]:
    order, colors = [], []
    uncolored, k = p, 0
    while uncolored:
        k += 1
        q = uncolored
        while q:
            v = (q & -q).bit_length() - 1
            q &= ~masks[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append(v)
            colors.append(k)
    return order, colors


def maximum_clique(masks: Sequence[int], budget: Optional[int] = None) -> CliqueSearch:
    """
    Maximum clique by branch and bound with a greedy-colouring bound.

    When the node budget runs out the best clique found so far is returned
    with conclusive=False; its size is then only a lower bound.
    """
    best_mask, best_size = 0, 0
    nodes = 0

    def expand(r: int, size: int, p: int) -> None:
        nonlocal best_mask, best_size, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhausted
        if not p:
            if size > best_size:
                best_mask, best_size = r, size
            return
        order, colors = _color_classes(p, masks)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= best_size:
                return
            v = order[i]
            expand(r | (1 << v), size + 1, p & masks[v])
            p &= ~(1 << v)

    conclusive = True
    try:
        expand(0, 0, (1 << len(masks)) - 1)
    except BudgetExhausted:
        conclusive = False
        logger.warning("clique search stopped after %d nodes; size %d is a lower bound", nodes, best_size)
    return CliqueSearch(best_size, members(best_mask), conclusive, nodes)
