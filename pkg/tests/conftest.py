import random
import sys

import pytest

from statemodels.cmap import CombinatorialMap
from statemodels.knotio import load_corpus


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


def planar_loop():
    return CombinatorialMap([(0, 1)], [(0, 1)])


def torus_bouquet():
    # two loops whose darts interleave around the single vertex
    return CombinatorialMap([(0, 2, 1, 3)], [(0, 1), (2, 3)])


def seeds(n, base=0):
    return [random.Random(base * 100003 + i) for i in range(n)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
