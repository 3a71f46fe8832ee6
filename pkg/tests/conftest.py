import pytest
from hypothesis import settings

settings.register_profile("ci", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("ci")


from skewbrace import groups  # noqa: E402


@pytest.fixture(scope="session")
def z2():
    return groups.cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return groups.cyclic_group(3)


@pytest.fixture(scope="session")
def z4():
    return groups.cyclic_group(4)


@pytest.fixture(scope="session")
def klein():
    return groups.direct_product(groups.cyclic_group(2), groups.cyclic_group(2))


@pytest.fixture(scope="session")
def s3():
    return groups.symmetric_group(3)


@pytest.fixture(scope="session")
def d4():
    return groups.dihedral_group(4)


@pytest.fixture(scope="session")
def q8():
    return groups.dicyclic_group(2)


@pytest.fixture(scope="session")
def d16():
    return groups.dihedral_group(8)
