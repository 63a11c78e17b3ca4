import pytest
import sys
import os

import networkx as nx
import numpy as np

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.graphs import FamilySpec, Graph, generate  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


# Configure pytest
def pytest_configure(config):
    """Configure pytest."""
    config.addinivalue_line("markers", "slow: corpus-wide property suites")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep ORTHORANK_* variables from the developer's shell out of the tests."""
    for name in list(os.environ):
        if name.startswith("ORTHORANK_"):
            monkeypatch.delenv(name)


def family(text: str) -> Graph:
    return generate(FamilySpec.parse(text))


def from_networkx(h: nx.Graph, name=None) -> Graph:
    return Graph.from_networkx(h, name=name)


def random_connected_graphs(count: int, max_n: int = 9, seed: int = 7):
    """Seeded G(n, p) samples, keeping only connected graphs."""
    rng = np.random.default_rng(seed)
    graphs = []
    while len(graphs) < count:
        n = int(rng.integers(2, max_n + 1))
        p = float(rng.uniform(0.2, 0.9))
        h = nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31)))
        if nx.is_connected(h):
            graphs.append(from_networkx(h, name=f"gnp-{len(graphs)}"))
    return graphs


@pytest.fixture(scope="session")
def corpus():
    return random_connected_graphs(500)


@pytest.fixture
def c5():
    return family("cycle:5")


@pytest.fixture
def clebsch():
    return family("folded-cube:5")


@pytest.fixture
def omega4():
    return family("orthogonality:4")
