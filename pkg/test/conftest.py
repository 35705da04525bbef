import pytest

from lib.constraints import ConstraintSet
from lib.model import InfluenceGraph, Prn, make_transition

A, B, C = 0, 1, 2


def running_prn() -> Prn:
    """a in 0..2 and Boolean b, c; a and b regulate themselves and both regulate c"""
    graph = InfluenceGraph(node_names=("a", "b", "c"), influences=((0, 0), (1, 1), (0, 2), (1, 2)))
    return Prn(graph=graph, max_values=(2, 1, 1))


def boolean_prn() -> Prn:
    """Same shape as the running network with every node Boolean"""
    graph = InfluenceGraph(node_names=("a", "b", "c"), influences=((0, 0), (1, 1), (0, 2), (1, 2)))
    return Prn(graph=graph, max_values=(1, 1, 1))


@pytest.fixture
def prn() -> Prn:
    return running_prn()


@pytest.fixture
def bool_prn() -> Prn:
    return boolean_prn()


@pytest.fixture
def two_transitions(prn):
    """110 -> (c,+) 111 and 111 -> (b,-) 101"""
    return (
        make_transition(prn, (1, 1, 0), C, 1),
        make_transition(prn, (1, 1, 1), B, -1),
    )


@pytest.fixture
def signed_R() -> ConstraintSet:
    """Negative self-loops and positive influences on c"""
    return ConstraintSet.of((A, A, "-"), (B, B, "-"), (A, C, "+"), (B, C, "+"))


RUNNING_MODEL = """\
# running example
node a 2
node b 1
node c 1

edge a -> a sign=- observable
edge b -> b sign=- observable
edge a -> c sign=+ observable
edge b -> c sign=+ observable

init a=0 b=0 c=0
"""


@pytest.fixture
def running_model_text() -> str:
    return RUNNING_MODEL
