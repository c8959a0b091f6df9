"""Exact coordinate series and numeric flows of the rank-one Lie-Scheffers system."""

from fractions import Fraction

from ._core import (
    FiniteEscapeError,
    __version__,
    gamma_a,
    gamma_b,
    gamma_c,
    hall_words,
    riccati,
    riccati_reference,
    series,
    series_json,
    upsilon,
    verify,
    wei_norman,
)

__all__ = [
    "FiniteEscapeError",
    "__version__",
    "gamma_a",
    "gamma_b",
    "gamma_c",
    "hall_words",
    "riccati",
    "riccati_reference",
    "series",
    "series_dict",
    "series_json",
    "upsilon",
    "verify",
    "wei_norman",
]


def series_dict(which, degree):
    """Coordinate series as an exact {word: Fraction} mapping."""
    return {w: Fraction(int(num), int(den)) for w, num, den in series(which, degree)}
