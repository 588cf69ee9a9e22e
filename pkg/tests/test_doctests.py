import doctest

from chainatlas import exactpoly, multiplicity


def test_arithmetic_doctests():
    result = doctest.testmod(exactpoly)
    assert result.attempted > 0
    assert result.failed == 0


def test_multiplicity_doctests():
    result = doctest.testmod(multiplicity)
    assert result.attempted > 0
    assert result.failed == 0
