import pytest

from limhyper import validate_topology


@pytest.fixture
def sierpinski():
    # one open point (0), one closed point (1)
    return validate_topology(2, [0b00, 0b01, 0b11])


@pytest.fixture
def three_point():
    # opens {} {a} {b} {a,b} {a,b,c}; both a and b are open points
    return validate_topology(3, [0b000, 0b001, 0b010, 0b011, 0b111])


@pytest.fixture
def discrete2():
    return validate_topology(2, [0b00, 0b01, 0b10, 0b11])


@pytest.fixture
def indiscrete2():
    return validate_topology(2, [0b00, 0b11])


@pytest.fixture
def sierpinski_plus_isolated():
    # Sierpinski on {0,1} next to the isolated point 2
    return validate_topology(3, [0b000, 0b001, 0b100, 0b011, 0b101, 0b111])
