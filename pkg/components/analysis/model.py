import math

from components.exceptions import DomainError
from components.models.helpers import Number
from components.models.params import ModelParams
from components.models.reports import HomogeneousEquilibria, Regime, RegimeReport
from components.utils.misc import compare, is_zero, safe_ratio

__all__ = [
    "coexistence_state",
    "alpha_beta",
    "classify_regime",
    "reaction_jacobian",
    "diffusion_jacobian",
]


def _coexistence_at(p: ModelParams) -> tuple[Number, Number] | None:
    den = p.a1 * p.a2 - p.b1 * p.b2
    if is_zero(den, scale=p.a1 * p.a2):
        return None
    return (
        (p.r1 * p.a2 - p.r2 * p.b1) / den,
        (p.r2 * p.a1 - p.r1 * p.b2) / den,
    )


def _positive(x: Number) -> bool:
    return compare(x, 0) > 0


def coexistence_state(p: ModelParams) -> HomogeneousEquilibria:
    coexistence = _coexistence_at(p)
    return HomogeneousEquilibria(
        extinction=(0 * p.r1, 0 * p.r2),
        exclusion_u=(p.r1 / p.a1, 0 * p.r2) if p.a1 != 0 else None,
        exclusion_v=(0 * p.r1, p.r2 / p.a2) if p.a2 != 0 else None,
        coexistence=coexistence,
        admissible=coexistence is not None
        and _positive(coexistence[0])
        and _positive(coexistence[1]),
        degenerate=coexistence is None,
    )


def alpha_beta_at(p: ModelParams, u: Number, v: Number) -> tuple[Number, Number]:
    return (p.b2 * u - p.a2 * v) * v, (p.b1 * v - p.a1 * u) * u


def admissible_coexistence(p: ModelParams) -> tuple[Number, Number]:
    equilibria = coexistence_state(p)
    if equilibria.degenerate:
        raise DomainError("coexistence state undefined (a1*a2 == b1*b2)")
    if not equilibria.admissible:
        u, v = equilibria.coexistence
        raise DomainError(f"coexistence state ({u}, {v}) is not admissible")
    return equilibria.coexistence


def alpha_beta(p: ModelParams) -> tuple[Number, Number]:
    u, v = admissible_coexistence(p)
    return alpha_beta_at(p, u, v)


def reaction_jacobian(p: ModelParams, u: Number, v: Number) -> list[list[Number]]:
    """Jacobian of the reaction terms at (u, v)."""
    return [
        [p.r1 - 2 * p.a1 * u - p.b1 * v, -p.b1 * u],
        [-p.b2 * v, p.r2 - p.b2 * u - 2 * p.a2 * v],
    ]


def diffusion_jacobian(p: ModelParams, u: Number, v: Number) -> list[list[Number]]:
    """Linearized diffusion matrix of the fluxes at (u, v)."""
    return [
        [p.d1 + 2 * p.d11 * u + p.d12 * v, p.d12 * u],
        [p.d21 * v, p.d2 + 2 * p.d22 * v + p.d21 * u],
    ]


def _case_boundaries(p: ModelParams) -> tuple:
    e1 = safe_ratio(p.b1, p.a2)
    e4 = safe_ratio(p.a1, p.b2)
    inner = (safe_ratio(p.b2, p.a1) + safe_ratio(p.a2, p.b1)) / 2
    e2 = 0 if math.isinf(inner) else safe_ratio(1, inner)
    e3 = (e1 + e4) / 2
    return e1, e2, e3, e4


def _is_nan(x) -> bool:
    return isinstance(x, float) and math.isnan(x)


def classify_regime(p: ModelParams) -> RegimeReport:
    equilibria = coexistence_state(p)
    ratio = safe_ratio(p.r1, p.r2)
    alpha = beta = det_j = tr_j = None
    if equilibria.coexistence is not None:
        u, v = equilibria.coexistence
        alpha, beta = alpha_beta_at(p, u, v)
        det_j = (p.a1 * p.a2 - p.b1 * p.b2) * u * v
        tr_j = -p.a1 * u - p.a2 * v

    def report(regime: Regime, case: str) -> RegimeReport:
        return RegimeReport(
            regime=regime,
            case=case,
            alpha=alpha,
            beta=beta,
            det_j=det_j,
            tr_j=tr_j,
            ratio=None if _is_nan(ratio) else ratio,
        )

    boundaries = _case_boundaries(p)
    if equilibria.degenerate or _is_nan(ratio) or any(map(_is_nan, boundaries)):
        return report(Regime.NONE, "n/a")

    e1, e2, e3, e4 = boundaries
    c1, c2, c3, c4 = (compare(ratio, e) for e in boundaries)

    if c1 == 0 or c4 == 0:
        # coexistence touches an axis: one component vanishes
        return report(Regime.NONE, "boundary")

    if c1 > 0 and c4 < 0:
        regime = Regime.WEAK
        if c2 < 0:
            case = "1w"
        elif c3 > 0:
            case = "3w"
        else:
            case = "boundary" if c2 == 0 or c3 == 0 else "2w"
    elif c4 > 0 and c1 < 0:
        regime = Regime.STRONG
        if c2 < 0:
            case = "1s"
        elif c3 > 0:
            case = "3s"
        else:
            case = "boundary" if c2 == 0 or c3 == 0 else "2s"
    else:
        return report(Regime.NONE, "n/a")

    return report(regime, case)
