"""Shared fixtures: the fixed expression corpus used by property suites."""

import pytest

from adiff.exprlang import as_function

POLY_EXPRS = [
    "t",
    "7",
    "t^2 + 3*t",
    "0.5*t^3 - t + 2",
    "t^4 - 3*t^2",
    "t^5 - 2*t^3 + t - 4",
]
EXP_EXPRS = ["0.5^t", "2^t", "3^t"]
TRIG_EXPRS = ["sin(t)", "cos(t)", "sin(2*t) + 0.5*cos(t)", "sin(t)*cos(t)"]

CORPUS_EXPRS = POLY_EXPRS + EXP_EXPRS + TRIG_EXPRS


@pytest.fixture(scope="session")
def corpus():
    """(source, callable) pairs for every corpus expression."""
    return [(src, as_function(src)) for src in CORPUS_EXPRS]
