import pytest
from hypothesis import settings

from ursb2.cyclotomic import make_root_config

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# small settings where every family has dimension at most 32
SMALL_SETTINGS = [(3, 3, 1, 2), (2, 4, 1, 1), (6, 2, 1, 1)]


@pytest.fixture(params=SMALL_SETTINGS, ids=lambda s: "cfg{}_{}_{}_{}".format(*s))
def small_config(request):
    return make_root_config(*request.param)


@pytest.fixture
def cfg_3511():
    return make_root_config(3, 5, 1, 1)
