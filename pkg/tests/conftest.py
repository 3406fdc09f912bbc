import pytest

from app import create_app
from app.services.star_ring import ring_make
from app.utils.formatting import parse_element, parse_ring_spec


@pytest.fixture
def app():
    return create_app({'TESTING': True})


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


def make_ring(text, cap=10 ** 6):
    return ring_make(parse_ring_spec(text), cap)


@pytest.fixture
def q2():
    return make_ring('Mat:2:Q')


@pytest.fixture
def gf2():
    return make_ring('Mat:2:GF2')


@pytest.fixture
def gf3():
    return make_ring('Mat:2:GF3')


@pytest.fixture
def z6():
    return make_ring('Zmod:6')


@pytest.fixture
def golden(q2):
    """A = [[0,1],[0,1]] over the rationals with transpose."""
    return parse_element(q2, '[[0,1],[0,1]]')
