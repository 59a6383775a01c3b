from dataclasses import dataclass, field
from enum import Enum

from components.models.helpers import Number


class Regime(Enum):
    WEAK = "weak"
    STRONG = "strong"
    NONE = "none"


CASE_TAGS = {"1w", "2w", "3w", "1s", "2s", "3s", "boundary", "n/a"}


class EigenFamily(Enum):
    CONTINUOUS = "continuous"
    DISCRETE = "discrete"


@dataclass(frozen=True)
class HomogeneousEquilibria:
    extinction: tuple[Number, Number]
    exclusion_u: tuple[Number, Number] | None
    exclusion_v: tuple[Number, Number] | None
    coexistence: tuple[Number, Number] | None
    admissible: bool
    degenerate: bool = False

    def __post_init__(self):
        if self.degenerate and self.coexistence is not None:
            raise ValueError(
                "coexistence", "'coexistence' must be undefined when degenerate"
            )
        if self.admissible and self.coexistence is None:
            raise ValueError("admissible", "an undefined state cannot be admissible")


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    case: str
    alpha: Number | None
    beta: Number | None
    det_j: Number | None
    tr_j: Number | None
    ratio: Number | None = None

    def __post_init__(self):
        if self.case not in CASE_TAGS:
            raise ValueError("case", f"'case' must be one of {sorted(CASE_TAGS)}")


@dataclass(frozen=True)
class ModeReport:
    k: int
    lam: float
    A: Number
    B: Number
    C: Number
    bifurcates: bool
    d_bif: float | None = None
    d_bif_limit: float | None = None
    family: EigenFamily = EigenFamily.CONTINUOUS
    self_diffusion: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k", "'k' must be >= 0")
        if self.bifurcates != (self.d_bif is not None):
            raise ValueError("d_bif", "'d_bif' is present iff the mode bifurcates")

    def polynomial(self, d: Number) -> Number:
        return self.A * d * d + self.B * d + self.C


@dataclass(frozen=True)
class Threshold:
    value: Number
    cutoff: Number


@dataclass(frozen=True)
class BifurcationLimit:
    value: Number
    collapses: bool = False


@dataclass(frozen=True)
class ExistenceBound:
    case: str
    coefficient: str | None  # "d12", "d21" or None for the unconditional cases
    bound: Number | None
    satisfied: bool


@dataclass(frozen=True)
class TheoremCheck:
    cond_det_j: bool
    cond_disc: bool
    r_star: Number | None
    q_at_r_star: Number | None
    alpha_plus_beta: Number | None
    det_j: Number | None
    thresholds: dict[int, float] = field(default_factory=dict)
    case: str | None = None

    @property
    def holds(self) -> bool:
        return self.cond_det_j and self.cond_disc
