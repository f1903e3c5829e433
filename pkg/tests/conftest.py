import pytest

import ramangate as rg


@pytest.fixture(scope="session")
def params():
    return rg.default_params()


@pytest.fixture(scope="session")
def swap_wp(params):
    return rg.swap_point(params)


@pytest.fixture(scope="session")
def rs_points(params):
    return rg.sqrt_swap_points(params)


@pytest.fixture(scope="session")
def identity_wp(params):
    return rg.identity_point(params)
