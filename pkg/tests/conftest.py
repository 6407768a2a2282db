from fractions import Fraction as F

import pytest
from hypothesis import settings

from rpqv.rexpr import builtin
from rpqv.scalar import BaseParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FAMILIES = ("JS", "CJ", "Quesne", "HN", "HB")


@pytest.fixture
def base():
    return BaseParams.from_roots(F(1, 2), F(1, 3), mu=1, nu=F(1, 2), g=F(3, 2))


@pytest.fixture
def js(base):
    return builtin("JS", base)


def make(family, base):
    return builtin(family, base)
