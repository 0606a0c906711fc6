import pytest
from hypothesis import HealthCheck, settings

from app.features.model.mdl_catalog import catalog_model

settings.register_profile(
    "hkz",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("hkz")


@pytest.fixture
def u_basic():
    return catalog_model("U-basic")


@pytest.fixture
def neg2_chain():
    return catalog_model("U-neg2-chain")


@pytest.fixture
def a1_fiber():
    return catalog_model("U-A1-fiber")


@pytest.fixture
def no_primes():
    return catalog_model("no-primes")
