from dataclasses import dataclass, fields, replace
from typing import NamedTuple

from components.models.helpers import Number, to_number

PARAMETER_NAMES = (
    "r1",
    "r2",
    "a1",
    "a2",
    "b1",
    "b2",
    "d1",
    "d2",
    "d11",
    "d22",
    "d12",
    "d21",
)

# Active continuation parameters; "d" ties d1 = d2.
ACTIVE_PARAMETERS = ("d", "r1", "r2", "d12", "d21", "d11", "d22")


class NumericParams(NamedTuple):
    r1: float
    r2: float
    a1: float
    a2: float
    b1: float
    b2: float
    d1: float
    d2: float
    d11: float
    d22: float
    d12: float
    d21: float


@dataclass(frozen=True)
class ModelParams:
    r1: Number
    r2: Number
    a1: Number
    a2: Number
    b1: Number
    b2: Number
    d1: Number = 1
    d2: Number = 1
    d11: Number = 0
    d22: Number = 0
    d12: Number = 0
    d21: Number = 0
    allow_negative_d: bool = False

    def __post_init__(self) -> None:
        for name in PARAMETER_NAMES:
            try:
                object.__setattr__(self, name, to_number(getattr(self, name)))
            except ValueError as exc:
                raise ValueError(name, f"'{name}': {exc}") from exc

        for name in ("r1", "r2", "a1", "a2", "b1", "b2", "d11", "d22", "d12", "d21"):
            if getattr(self, name) < 0:
                raise ValueError(name, f"'{name}' must be >= 0")

        if not self.allow_negative_d:
            for name in ("d1", "d2"):
                if getattr(self, name) <= 0:
                    raise ValueError(name, f"'{name}' must be > 0")

    @property
    def d(self) -> Number:
        return self.d1

    @property
    def is_exact(self) -> bool:
        from components.utils.misc import is_exact

        return is_exact(*(getattr(self, name) for name in PARAMETER_NAMES))

    def numeric(self) -> NumericParams:
        return NumericParams(*(float(getattr(self, name)) for name in PARAMETER_NAMES))

    def value_of(self, param: str) -> Number:
        if param == "d":
            return self.d1
        if param not in PARAMETER_NAMES:
            raise ValueError("param", f"Unknown parameter '{param}'")
        return getattr(self, param)

    def with_value(self, param: str, value: Number) -> "ModelParams":
        if param == "d":
            return replace(self, d1=value, d2=value)
        if param not in PARAMETER_NAMES:
            raise ValueError("param", f"Unknown parameter '{param}'")
        return replace(self, **{param: value})

    def as_dict(self) -> dict[str, Number]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
