from fractions import Fraction

import pytest

from torus_reduction.model import validate_space
from torus_reduction.pairing import ReducedSpace, linear_model
from torus_reduction.types import Workspace

# Rank-1 spheres. "Inward" puts the weight -1 at the maximum of the moment map.
S2_INWARD = {
    "name": "s2",
    "points": [
        {"id": "N", "moment": ["1"], "weights": [[-1]]},
        {"id": "S", "moment": ["-1"], "weights": [[1]]},
    ],
}
S2_OUTWARD = {
    "name": "s2_outward",
    "points": [
        {"id": "N", "moment": ["1"], "weights": [[1]]},
        {"id": "S", "moment": ["-1"], "weights": [[-1]]},
    ],
}
CP2 = {
    "name": "cp2",
    "points": [
        {"id": "N", "moment": ["-1", "2"], "weights": [[0, -1], [1, -1]]},
        {"id": "S", "moment": ["-1", "-1"], "weights": [[1, 0], [0, 1]]},
        {"id": "E", "moment": ["2", "-1"], "weights": [[-1, 0], [-1, 1]]},
    ],
}
ORIGIN_2 = (Fraction(0), Fraction(0))


@pytest.fixture(scope="session")
def s2_workspace():
    return Workspace.load("s2")


@pytest.fixture(scope="session")
def cp2_workspace():
    return Workspace.load("cp2")


@pytest.fixture(scope="session")
def cp2xcp2_workspace():
    return Workspace.load("cp2xcp2")


@pytest.fixture(scope="session")
def linear_workspace():
    return Workspace.load("linear")


@pytest.fixture(scope="session")
def s2():
    return validate_space(S2_INWARD)


@pytest.fixture(scope="session")
def s2_outward():
    return validate_space(S2_OUTWARD)


@pytest.fixture(scope="session")
def cp2():
    return validate_space(CP2)


@pytest.fixture(scope="session")
def s2_cubed(s2_workspace):
    return s2_workspace.space("s2_cubed")


@pytest.fixture(scope="session")
def cp2xcp2(cp2xcp2_workspace):
    return cp2xcp2_workspace.space("cp2xcp2")


@pytest.fixture(scope="session")
def half_square(cp2xcp2_workspace):
    return cp2xcp2_workspace.cls("cp2xcp2", "half-square")


@pytest.fixture(scope="session")
def reduced_cp2xcp2(cp2xcp2):
    return ReducedSpace(cp2xcp2)


@pytest.fixture(scope="session")
def c3():
    return linear_model([(1,), (1,), (1,)], name="c3")


@pytest.fixture(scope="session")
def c2_12():
    return linear_model([(1,), (2,)], name="c2_12")


@pytest.fixture(scope="session")
def c2_11():
    return linear_model([(1,), (1,)], name="c2_11")
