"""Reusable utilities"""

import math
from fractions import Fraction
from typing import Union


def truncate(f: Union[int, float], n: Union[int, float]) -> str:
    """
    Format a given number ``f`` with a given precision ``n``, rounding towards zero.
    """

    if not isinstance(f, int) and not isinstance(f, float):
        return "0.0"

    if not isinstance(n, int) and not isinstance(n, float):
        return "0.0"

    if math.isnan(f) or math.isinf(f):
        return str(f)

    scaled = math.floor(abs(f) * 10**n) / 10**n
    # `{n}` inside the actual format honors the precision
    return f"{'-' if f < 0 and scaled else ''}{scaled:.{n}f}"


def fraction_text(value: Union[int, Fraction]) -> str:
    """
    "p/q" for a proper fraction, the integer otherwise.
    """

    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def compare(val1, val2, label="", precision=2):
    """
    Compare two values and describe the relation between them.
    """

    if val1 > val2:
        relation = ">"
    elif val1 < val2:
        relation = "<"
    else:
        relation = "="

    text = f"{truncate(val1, precision)} {relation} {truncate(val2, precision)}"
    if label == "":
        return text
    return f"{label}: {text}"
