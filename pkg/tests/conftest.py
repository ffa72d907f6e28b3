import json
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ifpn_lab.core.classify import ClassifierConfig
from ifpn_lab.core.ifpn import standard_ifpn
from ifpn_lab.core.structures import SampleGrid
from ifpn_lab.norms import builtin_pseudo_norm

# (name expression, dimension) of the six acceptance pairs
ACCEPTANCE_NORMS = [
    ("abs", 1),
    ("euclidean", 2),
    ("sup", 3),
    ("truncated(euclidean,1)", 2),
    ("root(abs)", 1),
    ("scaled(abs,2)", 1),
]


def pair_for(name, dimension=1):
    return standard_ifpn(builtin_pseudo_norm(name, dimension))


@pytest.fixture(scope="session")
def abs_pair():
    return pair_for("abs")


@pytest.fixture(scope="session")
def grid1():
    return SampleGrid.default(1)


@pytest.fixture(scope="session")
def grid2():
    return SampleGrid.default(2)


@pytest.fixture(scope="session")
def cubic_grid():
    return SampleGrid.nonnegative(100.0)


@pytest.fixture(scope="session")
def cfg1(grid1):
    return ClassifierConfig.default(grid1)


@pytest.fixture
def write_config(tmp_path):
    def write(document, name="scenario.json"):
        path = tmp_path / name
        text = document if isinstance(document, str) else json.dumps(document)
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write
