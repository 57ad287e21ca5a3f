import pytest

from latticecontact import preset_lattice


@pytest.fixture(scope="session")
def sc():
    return preset_lattice("sc", 1.0)


@pytest.fixture(scope="session")
def fcc():
    return preset_lattice("fcc", 1.0)


@pytest.fixture(scope="session")
def bcc():
    return preset_lattice("bcc", 1.0)
