import pytest

from segrenum import GenericityConfig, PolynomialRing, ideal, make_germ


@pytest.fixture(scope="session")
def R2():
    return PolynomialRing(["x", "y"])


@pytest.fixture(scope="session")
def R3():
    return PolynomialRing(["x", "y", "z"])


@pytest.fixture(scope="session")
def germ2(R2):
    return make_germ(R2)


@pytest.fixture(scope="session")
def germ3(R3):
    return make_germ(R3)


@pytest.fixture(scope="session")
def cfg():
    return GenericityConfig()


@pytest.fixture(scope="session")
def divisor_pair(R3):
    """A plane divisor and the same plane fattened along the axes."""
    x, y, z = R3.variables()
    return ideal(R3, z), ideal(R3, x * z, y * z, z * z)


@pytest.fixture(scope="session")
def corpus_ideals(R2, R3, germ2, germ3):
    """Small ideals reused across property suites: (germ, ideal) pairs."""
    x, y = R2.variables()
    x3, y3, z3 = R3.variables()
    return [
        (germ3, ideal(R3, z3)),
        (germ3, ideal(R3, x3 * z3, y3 * z3, z3 ** 2)),
        (germ2, ideal(R2, x, y)),
        (germ2, ideal(R2, x ** 2, y ** 3)),
        (germ2, ideal(R2, x ** 2, y ** 2)),
        (germ2, ideal(R2, x ** 2, x * y, y ** 2)),
        (germ2, ideal(R2, x ** 2 - y ** 3)),
    ]
