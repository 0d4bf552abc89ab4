import numpy as np
import pytest

from cczcz import Params, Partition, PhaseSequence, build_cczcz_theorem1
from cczcz.construct import CodeMatrix, CodeSet

# printed reference matrix of the binary example: 4 rows of length 32
EXAMPLE1_ROWS = [
    "01011111011011000101000001100011",
    "00001010001110010000010100110110",
    "01101100010111110110001101010000",
    "00111001000010100011011000000101",
]

# printed reference matrix of the ternary example: 9 rows of length 27
EXAMPLE2_ROWS = [
    "000000000012012012021021021",
    "012012012021021021000000000",
    "021021021000000000012012012",
    "000111222012120201021102210",
    "012120201021102210000111222",
    "021102210000111222012120201",
    "000222111012201120021210102",
    "012201120021210102000222111",
    "021210102000222111012201120",
]


@pytest.fixture(scope="session")
def ex1_params():
    return Params(p=2, m=5, k=2)


@pytest.fixture(scope="session")
def ex1_partition(ex1_params):
    return Partition(ex1_params, ((5, 3, 1), (4, 2)))


@pytest.fixture(scope="session")
def ex1_g():
    return [1, 0, 1, 0, 0]


@pytest.fixture(scope="session")
def ex1_set(ex1_partition, ex1_g):
    return build_cczcz_theorem1(ex1_partition, ex1_g, 0)


@pytest.fixture(scope="session")
def ex2_fixture_code():
    rows = tuple(
        PhaseSequence(np.array([int(c) for c in r]), 3) for r in EXAMPLE2_ROWS
    )
    return CodeMatrix(rows, label=0, provenance={"builder": "fixture", "p": 3})


@pytest.fixture(scope="session")
def ex2_regenerated_set():
    # the printed ternary matrix corresponds to paths (3,1) | (2): block heads
    # sit on the top digit positions, which is the head-anchored strict form
    prm = Params(p=3, m=3, k=2)
    return build_cczcz_theorem1(Partition(prm, ((3, 1), (2,))))


def phase_rows(code: CodeMatrix) -> list:
    return ["".join(str(int(x)) for x in r.phases) for r in code.rows]
