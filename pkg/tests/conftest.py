from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from jacobi_nh import HalfIntSymMatrix

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def m1():
    return HalfIntSymMatrix([[2]])


@pytest.fixture
def m2():
    return HalfIntSymMatrix([[1, Fraction(1, 2)], [Fraction(1, 2), 2]])
