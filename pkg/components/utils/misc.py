import math
from fractions import Fraction

from config.defaults import REL_TOL

__all__ = [
    "is_exact",
    "compare",
    "is_zero",
    "safe_ratio",
]


def is_exact(*values) -> bool:
    return all(
        isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values
    )


def compare(x, y, rel_tol: float = REL_TOL) -> int:
    """Three-way comparison, exact for rationals and tolerant for floats."""
    if is_exact(x, y):
        return (x > y) - (x < y)
    fx, fy = float(x), float(y)
    if math.isinf(fx) or math.isinf(fy):
        return (fx > fy) - (fx < fy)
    if abs(fx - fy) <= rel_tol * max(abs(fx), abs(fy)):
        return 0
    return 1 if fx > fy else -1


def is_zero(x, scale=1, rel_tol: float = REL_TOL) -> bool:
    if is_exact(x):
        return x == 0
    return abs(float(x)) <= rel_tol * max(abs(float(scale)), 1.0)


def safe_ratio(num, den):
    """num/den with den == 0 mapped to +inf (num > 0) or nan (num <= 0)."""
    if den == 0:
        return math.inf if num > 0 else math.nan
    return num / den
