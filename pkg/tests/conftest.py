import os

import pytest

from permbinom.ffield import make_field


def pytest_collection_modifyitems(config, items):
    # q=128 runs only on request
    if os.environ.get('PERMBINOM_LARGE'):
        return
    skip = pytest.mark.skip(reason='set PERMBINOM_LARGE=1 to run')
    for item in items:
        if 'large' in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def f25():
    return make_field(5, 1)


@pytest.fixture
def f64():
    return make_field(2, 3)


@pytest.fixture
def f121():
    return make_field(11, 1)
