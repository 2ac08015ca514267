from fractions import Fraction

import pytest

from eqcert.games import Game


def F(x, y=None) -> Fraction:
    return Fraction(x) if y is None else Fraction(x, y)


@pytest.fixture
def coordination() -> Game:
    # two strict pure NE on the diagonal
    return Game((("a", "b"), ("a", "b")),
                ((Fraction(2), Fraction(0), Fraction(0), Fraction(1)),
                 (Fraction(2), Fraction(0), Fraction(0), Fraction(1))),
                "coordination")


@pytest.fixture
def zero_game() -> Game:
    zeros = (Fraction(0),) * 4
    return Game((("a", "b"), ("a", "b")), (zeros, zeros), "zero")
