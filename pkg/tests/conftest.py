import numpy as np
import pytest
from click.testing import CliRunner
from hypothesis import settings

from expander_growth import create_cli
from expander_growth.models import Graph

settings.register_profile("ci", max_examples=100, deadline=None)
settings.load_profile("ci")

class TestConfig:
    THREADS = 1
    TOL = 1e-9
    MAX_ITER = 100_000
    SEED = 7
    SNAPSHOT_EVERY = 1
    ESTIMATE_EVERY = 1
    SAMPLES = 20
    CURVE_GRID = 11
    LOG_LEVEL = "WARNING"

def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run desk-scale tests")

def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)

def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

def petersen_graph() -> Graph:
    outer = [(v, (v + 1) % 5) for v in range(5)]
    spokes = [(v, v + 5) for v in range(5)]
    inner = [(5 + v, 5 + (v + 2) % 5) for v in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)

def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])

def graph_from_bits(n: int, bits: int) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph.from_edges(n, [pair for i, pair in enumerate(pairs) if bits >> i & 1])

@pytest.fixture
def cli():
    return create_cli(TestConfig)

@pytest.fixture
def runner():
    return CliRunner()

@pytest.fixture
def petersen():
    return petersen_graph()

@pytest.fixture
def k5():
    return complete_graph(5)

@pytest.fixture
def c5():
    return cycle_graph(5)

@pytest.fixture
def edge_file(tmp_path):
    def write(g: Graph, name: str = "graph.txt") -> str:
        from expander_growth.graph import store_edge_list

        path = tmp_path / name
        path.write_text(store_edge_list(g))
        return str(path)
    return write

@pytest.fixture
def rng():
    return np.random.default_rng(12345)
