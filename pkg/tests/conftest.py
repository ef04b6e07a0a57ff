import os

import pytest

from src.core.order import OrderKind, PathOrder
from src.core.quiver_core import Quiver
from src.frontend.parser import parse_expression

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
PROBLEMS = os.path.join(ROOT, 'data', 'problems')
GOLDEN = os.path.join(ROOT, 'data', 'golden')


def poly(quiver, text):
    return parse_expression(quiver, text)


def lenllex(quiver):
    return PathOrder(OrderKind.LEN_LLEX, quiver)


@pytest.fixture
def three_loops():
    """One vertex, loops declared z, y, x (so z < y < x)."""
    return Quiver(['v'], [('z', 0, 0), ('y', 0, 0), ('x', 0, 0)])


@pytest.fixture
def loops_x_first():
    """One vertex, loops declared x, y (so x < y)."""
    return Quiver(['v'], [('x', 0, 0), ('y', 0, 0)])


@pytest.fixture
def loops_y_first():
    """One vertex, loops declared y, x (so y < x)."""
    return Quiver(['v'], [('y', 0, 0), ('x', 0, 0)])


@pytest.fixture
def right_quiver():
    return Quiver.from_names(
        ['v1', 'v2', 'v3'],
        [('t', 'v2', 'v3'), ('z', 'v1', 'v2'), ('y', 'v1', 'v3'), ('x', 'v3', 'v3')],
    )


def _square(order_of_sources):
    arrows = {
        'e': ('v4', 'v4'), 'b': ('v2', 'v4'), 'd': ('v3', 'v4'),
        'a': ('v1', 'v2'), 'g': ('v1', 'v3'),
    }
    return Quiver.from_names(
        ['v1', 'v2', 'v3', 'v4'],
        [(name, *arrows[name]) for name in order_of_sources],
    )


@pytest.fixture
def square_a():
    """Commutative square with e < b < d < a < g."""
    return _square(['e', 'b', 'd', 'a', 'g'])


@pytest.fixture
def square_b():
    """Commutative square with e < b < d < g < a."""
    return _square(['e', 'b', 'd', 'g', 'a'])


@pytest.fixture
def loop_chain():
    """Loop a at v1 and b: v1 -> v2."""
    return Quiver(['v1', 'v2'], [('a', 0, 0), ('b', 0, 1)])


@pytest.fixture
def line_quiver():
    return Quiver.from_names(['v1', 'v2', 'v3'], [('p', 'v1', 'v2'), ('q', 'v2', 'v3')])
