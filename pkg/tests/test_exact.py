from fractions import Fraction
from itertools import product

import networkx as nx
import pytest

from src.errors import InconsistencyError, LimitExceededError, ValidationError
from src.exact import ExactLimits, clique_and_independence, compute_exact
from src.exact.cliques import maximal_independent_sets, maximum_clique
from src.exact.coloring import chromatic_number, dsatur_coloring
from src.exact.fractional import fractional_chromatic_number, fractional_coloring
from src.exact.simplex import InfeasibleLP, solve_covering_lp
from src.graphs import Graph, complement, disjunctive_product, empty_graph
from tests.conftest import family


def brute_force_chi(g: Graph) -> int:
    for k in range(1, g.n + 1):
        for colors in product(range(k), repeat=g.n):
            if all(colors[v] != colors[w] for v, w in g.edges):
                return k
    return g.n


def _is_proper(g: Graph, coloring) -> bool:
    return all(coloring[v] != coloring[w] for v, w in g.edges)


def _networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.mark.parametrize(
    "text, chi",
    [
        ("cycle:5", 3),
        ("cycle:6", 2),
        ("kneser:5,2", 3),
        ("kneser:6,2", 4),
        ("orthogonality:4", 4),
        ("folded-cube:5", 4),
        ("andrasfai:4", 3),
        ("complete:6", 6),
        ("path:1", 1),
    ],
)
def test_chromatic_number_catalogue(text, chi):
    """Test chi on family members with known chromatic numbers."""
    result = chromatic_number(family(text))
    assert result.chi == chi
    assert result.conclusive
    assert _is_proper(family(text), result.coloring)
    assert max(result.coloring) + 1 == chi


@pytest.mark.slow
def test_chromatic_number_matches_brute_force(corpus):
    """Test branch and bound against exhaustive colouring on every n <= 7 corpus graph."""
    small = [g for g in corpus if g.n <= 7]
    assert small
    for g in small:
        assert chromatic_number(g).chi == brute_force_chi(g), g.name


def test_budget_exhaustion_is_inconclusive():
    """Test that running out of nodes yields bounds, never a wrong chi."""
    result = chromatic_number(family("cycle:5"), budget=1)
    assert result.chi is None
    assert not result.conclusive
    assert result.lower <= 3 <= result.upper
    assert _is_proper(family("cycle:5"), result.coloring)


def test_dsatur_is_proper(corpus):
    """Test greedy DSATUR always produces a proper colouring."""
    for g in corpus[:100]:
        colors, k = dsatur_coloring(g)
        assert _is_proper(g, colors)
        assert k >= chromatic_number(g).chi


def test_cliques_match_networkx(corpus):
    """Test omega, alpha and maximal independent sets against networkx."""
    for g in corpus[:150]:
        h = _networkx(g)
        numbers = clique_and_independence(g)
        assert numbers.conclusive
        assert numbers.omega == max(len(c) for c in nx.find_cliques(h))
        assert numbers.alpha == max(len(c) for c in nx.find_cliques(nx.complement(h)))
        expected = sorted(tuple(sorted(c)) for c in nx.find_cliques(nx.complement(h)))
        assert maximal_independent_sets(g) == expected


def test_maximum_clique_members_form_a_clique():
    """Test the reported members are pairwise adjacent."""
    g = family("kneser:7,2")
    result = maximum_clique(g.neighbor_masks)
    assert result.size == len(result.members) == 3
    for i, v in enumerate(result.members):
        for w in result.members[i + 1 :]:
            assert g.has_edge(v, w)


@pytest.mark.parametrize(
    "text, chi_f",
    [
        ("cycle:5", Fraction(5, 2)),
        ("cycle:7", Fraction(7, 3)),
        ("kneser:5,2", Fraction(5, 2)),
        ("folded-cube:5", Fraction(16, 5)),
        ("complete:4", Fraction(4)),
        ("path:3", Fraction(2)),
    ],
)
def test_fractional_chromatic_number(text, chi_f):
    """Test chi_f on vertex-transitive and small members."""
    assert fractional_chromatic_number(family(text)) == chi_f


def test_andrasfai_fractional_chromatic_number():
    """Test chi_f(Andrasfai(k)) = 3 - 1/k = n / alpha."""
    for k in range(2, 6):
        g = family(f"andrasfai:{k}")
        params = compute_exact(g)
        assert params.chi_f == 3 - Fraction(1, k)
        assert params.chi_f == Fraction(g.n, params.alpha)


def test_disjunctive_product_fractional_chromatic_number():
    """Test chi_f(C5 * K3) = 15/2, the product of the factors' values."""
    g = disjunctive_product(family("cycle:5"), family("complete:3"))
    assert fractional_chromatic_number(g) == Fraction(15, 2)


def test_fractional_coloring_certificates():
    """Test the primal colouring covers every vertex and the dual is a fractional clique."""
    g = family("kneser:5,2")
    result = fractional_coloring(g)
    assert sum(result.weights.values()) == result.value
    for v in range(g.n):
        assert sum(y for s, y in result.weights.items() if v in s) >= 1
    assert sum(result.clique_weights) == result.value
    for s in maximal_independent_sets(g):
        assert sum(result.clique_weights[v] for v in s) <= 1


def test_fractional_limit():
    """Test the LP refuses graphs above the size limit."""
    with pytest.raises(LimitExceededError):
        fractional_coloring(family("cycle:21"))
    assert fractional_coloring(family("cycle:21"), max_n=21).value == Fraction(21, 10)


def test_simplex_small_programs():
    """Test exact primal and dual optima on hand-solved covering programs."""
    solution = solve_covering_lp([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert solution.value == Fraction(3, 2)
    assert sum(solution.primal) == sum(solution.dual) == Fraction(3, 2)
    weighted = solve_covering_lp([[1, 0], [0, 1]], b=[2, 3], c=[1, 5])
    assert weighted.value == 17
    assert weighted.primal == (2, 3)
    assert weighted.dual == (1, 5)


def test_simplex_rejects_bad_programs():
    """Test ragged input, negative costs and infeasible rows."""
    with pytest.raises(ValidationError):
        solve_covering_lp([[1, 0], [1]])
    with pytest.raises(ValidationError):
        solve_covering_lp([[1]], c=[-1])
    with pytest.raises(InfeasibleLP):
        solve_covering_lp([[0, 0], [1, 1]])


def test_compute_exact_clebsch():
    """Test the Clebsch graph: alpha 5, omega 2, chi 4, chi_f 16/5."""
    params = compute_exact(family("folded-cube:5"))
    assert (params.omega, params.alpha, params.chi) == (2, 5, 4)
    assert params.chi_f == Fraction(16, 5)
    assert params.conclusive


def test_compute_exact_limits():
    """Test inconclusive colouring and the skipped LP are reported, not raised."""
    params = compute_exact(
        family("cycle:5"), ExactLimits(coloring_budget=1, clique_budget=10_000, max_n_fractional=4)
    )
    assert params.chi is None
    assert not params.conclusive
    assert params.chi_f is None
    assert "exceeds" in params.chi_f_skipped


def test_compute_exact_edgeless_and_complement():
    """Test the edgeless graph and the complete graph as complements."""
    params = compute_exact(empty_graph(4))
    assert (params.chi, params.omega, params.alpha, params.chi_f) == (1, 1, 4, 1)
    full = compute_exact(complement(empty_graph(4)))
    assert (full.chi, full.omega, full.alpha, full.chi_f) == (4, 4, 1, 4)


def test_vertex_transitive_chi_f_is_n_over_alpha():
    """Test chi_f = n / alpha on vertex-transitive family members."""
    for text in ("cycle:9", "kneser:6,2", "folded-cube:5", "andrasfai:3", "complete:5"):
        g = family(text)
        params = compute_exact(g)
        assert params.chi_f == Fraction(g.n, params.alpha), text


def test_inconsistency_error_is_a_runtime_error():
    """Test the error hierarchy used for internal contradictions."""
    assert issubclass(InconsistencyError, RuntimeError)
