# conftest.py

# Import necessary libraries
import pytest  # For shared fixtures
from hypothesis import HealthCheck, settings  # For the shared property-test profile
from graph_cuts import Multigraph  # For small hand-built graphs
from instance_io import nolam_instance  # For the five-node example
from network_design_solver import kecss_instance, sndp_instance  # For small instances

settings.register_profile('network_design', deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile('network_design')


@pytest.fixture
def nolam():
    """Five-node example with c_sw = 0 and all other costs 1."""
    return nolam_instance()


@pytest.fixture
def nolam_unit():
    return nolam_instance(unit_costs=True)


@pytest.fixture
def path_instance():
    """Path a-b-c-d with unit costs and requirement (a, d, 1)."""
    graph = Multigraph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
    return sndp_instance(graph, [1, 1, 1], [(0, 3, 1)], ('a', 'b', 'c', 'd'))


@pytest.fixture
def triangle():
    return Multigraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def k4():
    return Multigraph.from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def triangle_kecss(triangle):
    return kecss_instance(triangle, [1, 1, 1], 3)
