"""
Pytest fixtures.
"""
import sys
import os

import numpy as np
import pytest

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, project_root)

from src.partitions import PartitionAntichain, finest, coarsest, make_partition
from src.quantum import density_from_pure, tensor_pure
from src.states import ghz, bell, basis_state

SEED = 20240501


@pytest.fixture(params=[1, 2, 3, 4, 5])
def party_count(request):
    return request.param  # Returns one party count at a time from the params list

@pytest.fixture(params=[(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)])
def bell_count(request):
    return request.param  # (n, B(n))

@pytest.fixture
def rng():
    return np.random.default_rng(SEED)

@pytest.fixture
def ghz3():
    return density_from_pure(ghz(3))

@pytest.fixture
def zero_phi():
    """|0> tensor Phi+ on parties 0 | 12."""
    return density_from_pure(tensor_pure([basis_state([0]), bell('phi+')]))

@pytest.fixture
def triangle():
    return PartitionAntichain((finest(3),))

@pytest.fixture
def point3():
    return PartitionAntichain((coarsest(3),))

@pytest.fixture
def two_edges():
    """{{01|2},{0|12}}: two edges sharing no vertex."""
    return PartitionAntichain((make_partition([[0, 1], [2]], 3), make_partition([[0], [1, 2]], 3)))
