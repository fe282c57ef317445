import pytest

from rtclosure.relation import Relation, Universe


@pytest.fixture
def abc():
    return Universe("abc")


@pytest.fixture
def chain(abc):
    """The running example: a -> b -> c."""
    return Relation.from_pairs(abc, [("a", "b"), ("b", "c")])
