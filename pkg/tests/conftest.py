import pytest

from src.config import get_settings
from src.models.sequence import LabeledGraph


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def four_cycle() -> LabeledGraph:
    return LabeledGraph(n=4, edges=[[0, 2], [1, 2], [0, 3], [1, 3]])


@pytest.fixture
def hostile_five() -> LabeledGraph:
    return LabeledGraph(n=5, edges=[[0, 2], [1, 2], [2, 4]])


@pytest.fixture
def case_one_graph() -> LabeledGraph:
    return LabeledGraph(n=6, edges=[[0, 2], [1, 2], [2, 3], [2, 4], [3, 5]])


@pytest.fixture
def case_two_graph() -> LabeledGraph:
    return LabeledGraph(n=6, edges=[[0, 2], [1, 2], [4, 5]])
