import pytest

from kkrcrystal import RiggedConfiguration

EX25_JSON = '{"n":3,"quantum":[1,1,2,1],"layers":[{"rows":[[2,0],[1,0]]},{"rows":[[1,0]]}]}'

REMARK47_ROWS = {
    1: "1111111122221111332111141111111111111111111111111111111",
    2: "1111111111112222111332114111111111111111111111111111111",
    3: "1111111111111111222211332411111111111111111111111111111",
    4: "1111111111111111111122221343211111111111111111111111111",
    5: "1111111111111111111111112232143221111111111111111111111",
    6: "1111111111111111111111111121322114322111111111111111111",
    7: "1111111111111111111111111112111322111432211111111111111",
    8: "1111111111111111111111111111211111322111143221111111111",
}


@pytest.fixture
def ex25():
    """The sl_3 configuration whose path is 1*2*13*2."""
    return RiggedConfiguration.from_json(EX25_JSON)


@pytest.fixture
def ex46():
    """The sl_4 configuration with quantum space 1^13 and scattering data s_1..s_4."""
    return RiggedConfiguration(
        4,
        (1,) * 13,
        (((4, 0), (3, 1), (1, 4)), ((2, 0), (1, 0)), ((1, 0),)),
    )


@pytest.fixture
def ex62():
    """sl_5 mid-extraction state: quantum space interleaves layer rows and unit boxes."""
    return RiggedConfiguration(
        5,
        (1, 1, 1, 1, 1, 3, 3, 1, 3, 1, 4),
        (
            ((4, 0), (3, 0), (3, 0), (3, 0), (1, 0)),
            ((4, 0), (3, 1), (1, 1)),
            ((2, 0), (1, 0)),
            ((1, 0),),
        ),
    )


@pytest.fixture
def ex63():
    """sl_6 mid-extraction state with an 8-column unwinding pair."""
    return RiggedConfiguration(
        6,
        (1, 1, 1, 1, 4, 1, 1, 1, 4, 1, 1, 1, 6, 1, 6, 1, 1, 1, 1, 8, 1, 1, 8),
        (
            ((8, 0), (8, 0), (6, 0), (6, 0), (4, 0), (4, 0)),
            ((8, 3), (6, 4), (3, 2), (2, 1)),
            ((4, 0), (2, 0), (1, 0)),
            ((1, 0), (1, 0)),
            ((1, 0),),
        ),
    )


@pytest.fixture
def remark47_rows():
    return dict(REMARK47_ROWS)
