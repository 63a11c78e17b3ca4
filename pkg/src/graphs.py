"""
Graph data model, graph6 interchange, the family catalogue and graph algebra.

Vertex orders of generated families are fixed so that spectra and reports are
reproducible:

- cycle, path, complete: 0..n-1 along the cycle / path.
- complete-bipartite(a, b): part one is 0..a-1, part two a..a+b-1.
- kneser(p, k): k-subsets of {0..p-1} in colex order.
- andrasfai(k): residues 0..3k-2 of Z_{3k-1}.
- folded-cube(d): binary strings of length d-1 in counting order.
- orthogonality(n): integer x in counting order, entry j of its +-1 vector
  is -1 exactly when bit j of x is set.
"""
import logging
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from functools import cached_property
from itertools import combinations
from math import comb
from typing import FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from src.errors import GraphFormatError, ValidationError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

GRAPH6_HEADER = ">>graph6<<"
MAX_GENERATED_VERTICES = 4096


@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph on vertices 0..n-1.

    Edges are stored as ordered pairs (v, w) with v < w. Loops, out-of-range
    endpoints and repeated edges (in either orientation) are rejected.
    The name is a label only and takes no part in equality.
    """

    n: int
    edges: FrozenSet[Edge] = frozenset()
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ValidationError(f"vertex count must be a positive integer, got {self.n!r}")
        canonical = set()
        for pair in self.edges:
            v, w = (int(x) for x in pair)
            if v == w:
                raise ValidationError(f"loop at vertex {v} is not allowed")
            if not (0 <= v < self.n and 0 <= w < self.n):
                raise ValidationError(f"edge {{{v},{w}}} out of range for n={self.n}")
            edge = (v, w) if v < w else (w, v)
            if edge in canonical:
                raise ValidationError(f"duplicate edge {{{edge[0]},{edge[1]}}}")
            canonical.add(edge)
        object.__setattr__(self, "edges", frozenset(canonical))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def neighbors(self) -> Tuple[FrozenSet[int], ...]:
        adj: List[set] = [set() for _ in range(self.n)]
        for v, w in self.edges:
            adj[v].add(w)
            adj[w].add(v)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def neighbor_masks(self) -> Tuple[int, ...]:
        """Neighbourhoods as integer bitsets (bit w set when w ~ v)."""
        masks = [0] * self.n
        for v, w in self.edges:
            masks[v] |= 1 << w
            masks[w] |= 1 << v
        return tuple(masks)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.neighbors)

    def is_regular(self) -> bool:
        return len(set(self.degrees)) == 1

    def has_edge(self, v: int, w: int) -> bool:
        return ((v, w) if v < w else (w, v)) in self.edges

    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix as a fresh float array."""
        a = np.zeros((self.n, self.n))
        for v, w in self.edges:
            a[v, w] = a[w, v] = 1.0
        return a

    def label(self) -> str:
        return self.name or serialize_graph6(self)

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.sorted_edges)
        return h

    @classmethod
    def from_networkx(cls, h: nx.Graph, name: Optional[str] = None) -> "Graph":
        """Relabel the nodes of h to 0..n-1 in their iteration order."""
        index = {v: i for i, v in enumerate(h.nodes)}
        return cls(len(index), frozenset((index[v], index[w]) for v, w in h.edges), name=name)


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset(), name=f"empty:{n}")


# --- graph6 -----------------------------------------------------------------


def _check_bytes(text: str, start: int) -> List[int]:
    data = []
    for i, ch in enumerate(text[start:], start=start):
        b = ord(ch)
        if not 63 <= b <= 126:
            raise GraphFormatError(f"byte {b!r} outside graph6 range 63..126", i)
        data.append(b - 63)
    return data


def parse_graph6(text: str) -> Graph:
    """
    Decode one graph6 line (optionally prefixed with the >>graph6<< header).

    The byte range, header, length and padding are checked here so errors can
    name an offset; the adjacency bits are decoded by networkx.

    Raises:
        GraphFormatError: naming the byte offset of the first problem
    """
    line = text.rstrip("\r\n")
    start = len(GRAPH6_HEADER) if line.startswith(GRAPH6_HEADER) else 0
    if len(line) == start:
        raise GraphFormatError("empty graph6 input", start)
    data = _check_bytes(line, start)

    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] != 63:
        if len(data) < 4:
            raise GraphFormatError("truncated vertex-count header", start + len(data))
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        if len(data) < 8:
            raise GraphFormatError("truncated vertex-count header", start + len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | b
        pos = 8
    if n == 0:
        raise GraphFormatError("graph has no vertices", start)

    n_bits = n * (n - 1) // 2
    n_bytes = (n_bits + 5) // 6
    body = data[pos:]
    if len(body) < n_bytes:
        raise GraphFormatError(
            f"truncated adjacency data: need {n_bytes} bytes, got {len(body)}",
            start + len(data),
        )
    if len(body) > n_bytes:
        raise GraphFormatError("trailing garbage after adjacency data", start + pos + n_bytes)
    padding = 6 * n_bytes - n_bits
    if padding and body[-1] & ((1 << padding) - 1):
        raise GraphFormatError("non-zero padding bits", start + pos + n_bytes - 1)

    return Graph.from_networkx(nx.from_graph6_bytes(line[start:].encode("ascii")))


def serialize_graph6(g: Graph, header: bool = False) -> str:
    """Encode a graph as graph6; the long vertex-count form is used only when n > 62."""
    encoded = nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()
    return (GRAPH6_HEADER + encoded) if header else encoded


def read_graph6_lines(lines: Iterable[str], source: Optional[str] = None) -> List[Graph]:
    """Parse a batch of graph6 lines, skipping blank lines; errors carry line context."""
    graphs = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            g = parse_graph6(line)
        except GraphFormatError as e:
            raise e.at(lineno, source) from None
        name = f"{source}:{lineno}" if source else f"line {lineno}"
        graphs.append(Graph(g.n, g.edges, name=name))
    logger.debug("read %d graphs from %s", len(graphs), source or "<lines>")
    return graphs


# --- families ---------------------------------------------------------------


class Family(StrEnum):
    CYCLE = "cycle"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete-bipartite"
    KNESER = "kneser"
    ANDRASFAI = "andrasfai"
    FOLDED_CUBE = "folded-cube"
    ORTHOGONALITY = "orthogonality"
    PATH = "path"


_ARITY = {
    Family.CYCLE: 1,
    Family.COMPLETE: 1,
    Family.COMPLETE_BIPARTITE: 2,
    Family.KNESER: 2,
    Family.ANDRASFAI: 1,
    Family.FOLDED_CUBE: 1,
    Family.ORTHOGONALITY: 1,
    Family.PATH: 1,
}


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family with its integer parameters, written ``name:p1,p2``."""

    family: Family
    parameters: Tuple[int, ...]

    def __post_init__(self):
        family = self.family
        if not isinstance(family, Family):
            try:
                family = Family(family)
            except ValueError:
                raise ValidationError(f"unknown graph family {self.family!r}") from None
            object.__setattr__(self, "family", family)
        params = tuple(int(p) for p in self.parameters)
        object.__setattr__(self, "parameters", params)
        if len(params) != _ARITY[family]:
            raise ValidationError(
                f"{family} takes {_ARITY[family]} parameter(s), got {len(params)}"
            )
        if any(p < 1 for p in params):
            raise ValidationError(f"{family} parameters must be positive, got {params}")
        if family is Family.CYCLE and params[0] < 3:
            raise ValidationError("cycle needs at least 3 vertices")
        if family is Family.KNESER and params[0] < 2 * params[1]:
            raise ValidationError(f"kneser(p,k) requires p >= 2k, got {params}")
        if family is Family.FOLDED_CUBE and params[0] < 2:
            raise ValidationError("folded-cube(d) requires d >= 2")
        if family_size(self) > MAX_GENERATED_VERTICES:
            raise ValidationError(
                f"{self} would have {family_size(self)} vertices "
                f"(limit {MAX_GENERATED_VERTICES})"
            )

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        name, sep, rest = text.strip().partition(":")
        if not sep or not rest:
            raise ValidationError(f"family spec must look like name:p1,p2, got {text!r}")
        try:
            params = tuple(int(p) for p in rest.split(","))
        except ValueError:
            raise ValidationError(f"non-integer parameter in {text!r}") from None
        return cls(name.strip().lower(), params)

    def __str__(self) -> str:
        return f"{self.family}:{','.join(str(p) for p in self.parameters)}"


def family_size(spec: FamilySpec) -> int:

    p = spec.parameters
    match spec.family:
        case Family.COMPLETE_BIPARTITE:
            return p[0] + p[1]
        case Family.KNESER:
            return comb(p[0], p[1])
        case Family.ANDRASFAI:
            return 3 * p[0] - 1
        case Family.FOLDED_CUBE:
            return 2 ** (p[0] - 1)
        case Family.ORTHOGONALITY:
            return 2 ** p[0]
        case _:
            return p[0]


def _circulant(n: int, connection: Iterable[int]) -> FrozenSet[Edge]:
    steps = {c % n for c in connection} - {0}
    return frozenset((i, (i + c) % n) if i < (i + c) % n else ((i + c) % n, i)
                     for i in range(n) for c in steps)


def generate(spec: FamilySpec) -> Graph:
    """Build a member of the family catalogue in its canonical vertex order."""
    p = spec.parameters
    n = family_size(spec)
    edges: FrozenSet[Edge]
    match spec.family:
        case Family.CYCLE:
            edges = _circulant(n, [1])
        case Family.PATH:
            edges = frozenset((i, i + 1) for i in range(n - 1))
        case Family.COMPLETE:
            edges = frozenset(combinations(range(n), 2))
        case Family.COMPLETE_BIPARTITE:
            a = p[0]
            edges = frozenset((i, j) for i in range(a) for j in range(a, n))
        case Family.KNESER:
            subsets = kneser_vertices(p[0], p[1])
            masks = [sum(1 << x for x in s) for s in subsets]
            edges = frozenset(
                (i, j) for i, j in combinations(range(n), 2) if masks[i] & masks[j] == 0
            )
        case Family.ANDRASFAI:
            edges = _circulant(n, [c for c in range(1, n) if c % 3 == 1])
        case Family.FOLDED_CUBE:
            d = p[0]
            edges = frozenset(
                (x, y)
                for x, y in combinations(range(n), 2)
                if (x ^ y).bit_count() in (1, d - 1)
            )
        case Family.ORTHOGONALITY:
            half = p[0] / 2
            edges = frozenset(
                (x, y) for x, y in combinations(range(n), 2) if (x ^ y).bit_count() == half
            )
    g = Graph(n, edges, name=str(spec))
    logger.debug("generated %s: n=%d m=%d", spec, g.n, g.m)
    return g


def kneser_vertices(p: int, k: int) -> List[Tuple[int, ...]]:
    """k-subsets of {0..p-1} in colex order."""
    return sorted(combinations(range(p), k), key=lambda s: s[::-1])


def orthogonality_vectors(n: int) -> np.ndarray:
    """The +-1 vector labels of the orthogonality graph's vertices, one row per vertex."""
    xs = np.arange(2**n)[:, None]
    bits = (xs >> np.arange(n)[None, :]) & 1
    return 1.0 - 2.0 * bits


# --- graph algebra ----------------------------------------------------------


def complement(g: Graph) -> Graph:
    edges = frozenset(e for e in combinations(range(g.n), 2) if e not in g.edges)
    name = f"complement({g.name})" if g.name else None
    return Graph(g.n, edges, name=name)


def disjunctive_product(g: Graph, h: Graph) -> Graph:
    """
    Disjunctive (co-normal) product on V(g) x V(h); vertex (a, b) has index a*|h| + b.

    (a, b) ~ (a', b') iff a ~ a' in g or b ~ b' in h.
    """
    n = g.n * h.n
    edges = set()
    for x, y in combinations(range(n), 2):
        a, b = divmod(x, h.n)
        a2, b2 = divmod(y, h.n)
        if g.has_edge(a, a2) or h.has_edge(b, b2):
            edges.add((x, y))
    name = f"{g.name}*{h.name}" if g.name and h.name else None
    return Graph(n, frozenset(edges), name=name)
