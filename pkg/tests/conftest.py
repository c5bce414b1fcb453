import pytest

from builders import CGC_EXAMPLE, binomial
from domain.models import CnfFormula, Graph


@pytest.fixture
def cgc_example() -> CnfFormula:
    return CGC_EXAMPLE


@pytest.fixture
def t4() -> Graph:
    return binomial(4)
