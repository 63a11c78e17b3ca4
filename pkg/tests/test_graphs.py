from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from src.errors import GraphFormatError, ValidationError
from src.graphs import (
    Family,
    FamilySpec,
    Graph,
    complement,
    disjunctive_product,
    empty_graph,
    family_size,
    kneser_vertices,
    orthogonality_vectors,
    parse_graph6,
    read_graph6_lines,
    serialize_graph6,
)
from src.spectral import spectral_fingerprint
from tests.conftest import family, from_networkx, random_connected_graphs


def test_graph_normalises_edges():
    """Test that edges are stored as (v, w) with v < w and names do not affect equality."""
    g = Graph(3, frozenset({(1, 0), (2, 1)}), name="path")
    assert g.edges == frozenset({(0, 1), (1, 2)})
    assert g == Graph(3, frozenset({(0, 1), (1, 2)}))
    assert g.degrees == (1, 2, 1)
    assert g.neighbors[1] == frozenset({0, 2})
    assert g.neighbor_masks[1] == 0b101
    assert g.has_edge(2, 1) and not g.has_edge(0, 2)


@pytest.mark.parametrize(
    "n, edges",
    [
        (3, {(1, 1)}),
        (3, {(0, 3)}),
        (3, {(0, 1), (1, 0)}),
        (0, set()),
    ],
)
def test_graph_rejects_bad_input(n, edges):
    """Test loops, out-of-range endpoints, duplicates and empty vertex sets."""
    with pytest.raises(ValidationError):
        Graph(n, frozenset(edges))


def test_graph6_known_encodings():
    """Test the encodings of a few small graphs against their standard graph6 strings."""
    assert serialize_graph6(family("cycle:5")) == "Dhc"
    assert serialize_graph6(family("complete:5")) == "D~{"
    assert serialize_graph6(family("complete:2")) == "A_"
    assert parse_graph6("Dhc") == family("cycle:5")
    assert parse_graph6(">>graph6<<A_") == family("complete:2")


def test_graph6_matches_networkx():
    """Test that our encoder agrees with networkx on random graphs."""
    for g in random_connected_graphs(30, max_n=12, seed=3):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        expected = nx.to_graph6_bytes(h, header=False).decode().strip()
        assert serialize_graph6(g) == expected
        assert parse_graph6(expected) == g


def test_graph6_long_form():
    """Test the four-byte vertex count used above 62 vertices."""
    g = family("folded-cube:7")
    text = serialize_graph6(g)
    assert text[0] == "~"
    assert parse_graph6(text) == g


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("D h", 1),
        ("Dh", 2),
        ("Dhcc", 3),
        ("?", 0),
        ("Bx", 1),
    ],
)
def test_graph6_errors_carry_offsets(text, offset):
    """Test that malformed graph6 reports the offending byte offset."""
    with pytest.raises(GraphFormatError) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_graph6_batch_reader_adds_line_context():
    """Test that a bad line in a batch names its file and line."""
    graphs = read_graph6_lines(["Dhc\n", "\n", "A_\n"], "corpus.g6")
    assert [g.name for g in graphs] == ["corpus.g6:1", "corpus.g6:3"]
    with pytest.raises(GraphFormatError) as info:
        read_graph6_lines(["Dhc", "D!"], "corpus.g6")
    assert info.value.line == 2
    assert str(info.value).startswith("corpus.g6: line 2, byte 1")


def test_family_spec_parse_and_str():
    """Test the name:p1,p2 mini-grammar."""
    spec = FamilySpec.parse("Kneser: 5, 2")
    assert spec.family is Family.KNESER
    assert spec.parameters == (5, 2)
    assert str(spec) == "kneser:5,2"
    assert FamilySpec.parse(str(spec)) == spec


@pytest.mark.parametrize(
    "text",
    ["kneser:3,2", "cycle:2", "kneser:5", "banana:3", "cycle", "cycle:x", "folded-cube:1", "orthogonality:13"],
)
def test_family_spec_rejects(text):
    """Test invalid family specs."""
    with pytest.raises(ValidationError):
        FamilySpec.parse(text)


@pytest.mark.parametrize(
    "text, n, m",
    [
        ("cycle:7", 7, 7),
        ("path:4", 4, 3),
        ("complete:6", 6, 15),
        ("complete-bipartite:2,3", 5, 6),
        ("kneser:5,2", 10, 15),
        ("andrasfai:3", 8, 12),
        ("folded-cube:5", 16, 40),
        ("orthogonality:4", 16, 48),
    ],
)
def test_family_sizes(text, n, m):
    """Test vertex and edge counts of every family."""
    g = family(text)
    assert g.n == n == family_size(FamilySpec.parse(text))
    assert g.m == m
    assert g.name == text


def test_families_match_networkx():
    """Test the generators against networkx constructions up to isomorphism."""
    pairs = [
        (family("kneser:5,2"), nx.petersen_graph()),
        (family("cycle:9"), nx.cycle_graph(9)),
        (family("complete-bipartite:3,4"), nx.complete_bipartite_graph(3, 4)),
    ]
    for g, h in pairs:
        assert spectral_fingerprint(g) == spectral_fingerprint(from_networkx(h))


def test_kneser_vertices_colex():
    """Test the documented colex vertex order."""
    assert kneser_vertices(4, 2) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_orthogonality_graph_labels_are_orthogonal_exactly_on_edges():
    """Test that Omega(4) joins +-1 vectors exactly when they are orthogonal."""
    g = family("orthogonality:4")
    x = orthogonality_vectors(4)
    gram = x @ x.T
    for v in range(g.n):
        for w in range(v + 1, g.n):
            assert g.has_edge(v, w) == (gram[v, w] == 0)


def test_andrasfai_is_regular_and_triangle_free():
    """Test Andrasfai(k): k-regular on 3k-1 vertices without triangles."""
    for k in range(2, 6):
        g = family(f"andrasfai:{k}")
        assert g.n == 3 * k - 1
        assert set(g.degrees) == {k}
        h = nx.Graph(list(g.edges))
        assert sum(nx.triangles(h).values()) == 0


def test_complement_and_disjunctive_product():
    """Test complement of C5 is C5 and the product indexing a*|h| + b."""
    c5 = family("cycle:5")
    assert spectral_fingerprint(complement(c5)) == spectral_fingerprint(c5)
    k3 = family("complete:3")
    product = disjunctive_product(c5, k3)
    assert product.n == 15
    assert product.has_edge(0 * 3 + 0, 0 * 3 + 1)
    assert product.has_edge(0 * 3 + 0, 1 * 3 + 0)
    assert not product.has_edge(0 * 3 + 0, 2 * 3 + 0)


def test_empty_graph():
    """Test the edgeless graph helper."""
    g = empty_graph(4)
    assert g.m == 0
    assert g.is_regular()
    assert serialize_graph6(g) == "C?"


@pytest.mark.parametrize("n", [1, 2, 5, 7, 13, 31, 62, 63, 64, 69, 130])
def test_graph6_matches_networkx_across_sizes(n):
    """Test encoding and decoding on both sides of the long-form threshold."""
    h = nx.gnp_random_graph(n, 0.4, seed=n)
    g = from_networkx(h)
    expected = nx.to_graph6_bytes(h, header=False).decode().strip()
    assert serialize_graph6(g) == expected
    assert parse_graph6(expected) == g
    assert serialize_graph6(g, header=True) == ">>graph6<<" + expected


def test_graph6_round_trip_small_random_graphs():
    """Test parse(serialize(g)) == g on seeded random graphs with n <= 8."""
    rng = np.random.default_rng(17)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        edges = frozenset(e for e in combinations(range(n), 2) if rng.uniform() < 0.5)
        g = Graph(n, edges)
        assert parse_graph6(serialize_graph6(g)) == g


def test_networkx_conversion():
    """Test Graph <-> networkx keeps vertices, including isolated ones."""
    g = Graph(4, frozenset({(0, 2)}))
    h = g.to_networkx()
    assert sorted(h.nodes) == [0, 1, 2, 3]
    assert Graph.from_networkx(h) == g
    assert Graph.from_networkx(nx.path_graph(["a", "b", "c"])) == family("path:3")


def test_complement_is_an_involution(corpus):
    """Test complement(complement(g)) == g."""
    for g in corpus[:100] + [empty_graph(3), family("kneser:5,2")]:
        assert complement(complement(g)) == g


def _small_graphs(count: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, 5))
        yield Graph(n, frozenset(e for e in combinations(range(n), 2) if rng.uniform() < 0.5))


def test_disjunctive_product_brute_force():
    """Test adjacency and the non-edge count of g * h against the factors."""
    for g, h in zip(_small_graphs(60, 1), _small_graphs(60, 2)):
        product = disjunctive_product(g, h)
        for x, y in combinations(range(product.n), 2):
            a, b = divmod(x, h.n)
            c, d = divmod(y, h.n)
            assert product.has_edge(x, y) == (g.has_edge(a, c) or h.has_edge(b, d))
        # ordered non-adjacent pairs, diagonal included, multiply
        non_edges = product.n * (product.n - 1) // 2 - product.m
        g_non = g.n * (g.n - 1) // 2 - g.m
        h_non = h.n * (h.n - 1) // 2 - h.m
        assert product.n + 2 * non_edges == (g.n + 2 * g_non) * (h.n + 2 * h_non)


def test_disjunctive_product_examples():
    """Test K2 * K2 = K4 and g * K1 = g."""
    assert disjunctive_product(family("complete:2"), family("complete:2")) == family("complete:4")
    for text in ("cycle:5", "kneser:5,2", "path:4"):
        g = family(text)
        assert disjunctive_product(g, empty_graph(1)) == g
        assert disjunctive_product(empty_graph(1), g) == g


@pytest.mark.parametrize("k", range(1, 7))
def test_andrasfai_regularity(k):
    """Test Andrasfai(k) is k-regular on 3k - 1 vertices."""
    g = family(f"andrasfai:{k}")
    assert g.n == 3 * k - 1
    assert g.degrees == (k,) * g.n
