import pytest

from ktpersist import build_persistence_complex, example_path, parse_filtration
from ktpersist.poly import QQ, Polynomial


@pytest.fixture(scope="session")
def example_text():
    return example_path().read_text()


@pytest.fixture(scope="session")
def example_filtration(example_text):
    return parse_filtration(example_text)


@pytest.fixture(scope="session")
def example_complex(example_filtration):
    return build_persistence_complex(example_filtration, QQ).check()


def tp(e, field=QQ):
    return Polynomial.t_power(e, field)
