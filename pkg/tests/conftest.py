import random

import pytest


@pytest.fixture
def rng(request):
    return random.Random(f"test/{request.node.name}")
