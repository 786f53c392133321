"""Exact canonical heights for one-parameter polynomial families over Q(t)."""

from fractions import Fraction

from ._hauteur import DegenerateFibreError, Family, ParseError, rationals, weil_height

__all__ = [
    "DegenerateFibreError",
    "Family",
    "ParseError",
    "rationals",
    "series_fractions",
    "weil_height",
]
__version__ = "0.1.0"


def series_fractions(fam, order=8):
    """Correction-series coefficients per place as exact Fractions."""
    return {e["place"]: [Fraction(c) for c in e["F"]] for e in fam.series(order)}
