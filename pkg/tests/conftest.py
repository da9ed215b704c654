import pytest

from numpy.random import default_rng

from acsim.objectives import load_or_train_classifier


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run the long acceptance tests')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return default_rng(7)


@pytest.fixture(scope='session')
def classifier():
    # the bundled weights the attack studies load; trained and written on first use
    return load_or_train_classifier()
