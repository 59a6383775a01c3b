import math
from fractions import Fraction
from numbers import Real

Number = int | float | Fraction


def to_number(val: Number | str | None) -> Number:
    """Coerce to an exact Fraction when possible, otherwise keep the float.

    Strings such as ``"15/2"`` or ``"0.5"`` are parsed exactly; Python floats
    stay floats so that callers passing floats get float arithmetic.
    """
    if isinstance(val, bool):
        raise ValueError(f"Cannot convert '{val!r}' to number")
    if isinstance(val, Fraction):
        return val
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, float):
        if not math.isfinite(val):
            raise ValueError(f"Cannot convert '{val!r}' to a finite number")
        return val
    if isinstance(val, Real):
        return float(val)
    if isinstance(val, str):
        text = val.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            pass
        try:
            number = float(text)
        except ValueError:
            raise ValueError(f"Cannot convert '{val!r}' to number")
        if not math.isfinite(number):
            raise ValueError(f"Cannot convert '{val!r}' to a finite number")
        return number
    raise ValueError(f"Cannot convert '{val!r}' to number")


def to_float(val: Number | str | None) -> float:
    if isinstance(val, float):
        return val
    try:
        return float(to_number(val if val is not None else 0.0))
    except (ValueError, TypeError):
        raise ValueError(f"Cannot convert '{val!r}' to float")


def to_int(val: int | str | None) -> int:
    if isinstance(val, int) and not isinstance(val, bool):
        return val
    try:
        return int(val or 0)
    except (ValueError, TypeError):
        raise ValueError(f"Cannot convert '{val!r}' to int")


def to_str(val: int | str | None) -> str:
    try:
        return str(val or "")
    except Exception:
        raise ValueError(f"Cannot convert '{val!r}' to str")


def to_bool(val: bool | str) -> bool:
    if isinstance(val, bool):
        return val
    lowered = str(val).strip().lower()
    if lowered in {"true", "1", "yes", "on"}:
        return True
    if lowered in {"false", "0", "no", "off"}:
        return False
    raise ValueError(f"Invalid boolean value: {val!r}")


def to_float_list(val: str | list | tuple) -> list[float]:
    if isinstance(val, str):
        val = [item for item in val.replace(";", ",").split(",") if item.strip()]
    return [to_float(item) for item in val]
