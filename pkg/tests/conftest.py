import pytest

from src.posets import BoundedPoset
from src.whitehead import HyperTree, enumerate_poset


@pytest.fixture
def two_petal_tree():
    """Two petals {1,2,3} and {3,4} glued at label 3."""
    return HyperTree.from_petals(4, [(1, 2, 3), (3, 4)])


@pytest.fixture(scope="session")
def wo3():
    return enumerate_poset(3, "out")


@pytest.fixture(scope="session")
def wo4():
    return enumerate_poset(4, "out")


@pytest.fixture(scope="session")
def wa2():
    return enumerate_poset(2, "aut")


@pytest.fixture(scope="session")
def wa3():
    return enumerate_poset(3, "aut")


@pytest.fixture
def boolean_lattice():
    """Subsets of {1, 2} under inclusion."""
    elements = ["0", "a", "b", "ab"]
    return BoundedPoset.from_covers(elements, [("0", "a"), ("0", "b"), ("a", "ab"), ("b", "ab")])


@pytest.fixture
def bowtie():
    """a, b < c, d with e above c: bounded closure is not Cohen-Macaulay."""
    elements = ["a", "b", "c", "d", "e"]
    covers = [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e")]
    return BoundedPoset.from_covers(elements, covers)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    path = tmp_path / "cache"
    monkeypatch.setenv("MCCOOL_CACHE_DIR", str(path))
    return str(path)
