"""Mode-by-mode linearization around the coexistence state.

For every Neumann eigenvalue lambda_k the characteristic matrix
J* - lambda_k J_Delta* has a determinant that is a quadratic polynomial in the
standard diffusion d = d1 = d2. Its coefficients decide whether the k-th mode
can bifurcate, where, and how the bifurcation points move with the
cross-diffusion coefficients.
"""

import math
from dataclasses import replace

from components.analysis.model import (
    admissible_coexistence,
    alpha_beta_at,
    classify_regime,
    coexistence_state,
)
from components.exceptions import DomainError
from components.models.helpers import Number
from components.models.params import ModelParams
from components.models.reports import (
    BifurcationLimit,
    EigenFamily,
    ExistenceBound,
    ModeReport,
    Regime,
    TheoremCheck,
    Threshold,
)
from components.models.states import Grid
from components.utils.misc import compare, is_zero
from config.defaults import MODES_MAX

__all__ = [
    "eigenvalue",
    "mode_polynomial",
    "self_diffusion_polynomial",
    "shifted_polynomial_decomposition",
    "d21_disappearance_threshold",
    "d12_disappearance_threshold",
    "d_bif_limit",
    "existence_bound",
    "theorem_quadratic",
    "theorem_large_cross",
    "mode_table",
    "positive_root",
]


def eigenvalue(k: int, grid: Grid | None = None) -> float:
    if k < 0:
        raise DomainError(f"mode index must be >= 0, got {k}")
    if grid is None:
        return (k * math.pi) ** 2
    if k > grid.n - 1:
        raise DomainError(f"mode {k} exceeds N-1 = {grid.n - 1} on this grid")
    # (2/h^2)(1 - cos(k pi h)) written without cancellation
    return (2.0 * math.sin(0.5 * k * math.pi * grid.h) / grid.h) ** 2


def _family(grid: Grid | None) -> EigenFamily:
    return EigenFamily.CONTINUOUS if grid is None else EigenFamily.DISCRETE


def positive_root(A: float, B: float, C: float) -> float | None:
    """Positive root of A d^2 + B d + C for A > 0 and C < 0.

    The larger-magnitude root comes from the quadratic formula, the other one
    from the product of roots.
    """
    A, B, C = float(A), float(B), float(C)
    if A <= 0 or C >= 0:
        return None
    disc = B * B - 4.0 * A * C
    q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
    roots = (q / A, C / q)
    return max(roots)


def _invariants(p: ModelParams):
    u, v = admissible_coexistence(p)
    alpha, beta = alpha_beta_at(p, u, v)
    det_j = (p.a1 * p.a2 - p.b1 * p.b2) * u * v
    tr_j = -p.a1 * u - p.a2 * v
    return u, v, alpha, beta, det_j, tr_j


def _report(k, lam, A, B, C, grid, self_diffusion) -> ModeReport:
    bifurcates = k >= 1 and compare(C, 0) < 0
    return ModeReport(
        k=k,
        lam=float(lam),
        A=A,
        B=B,
        C=C,
        bifurcates=bifurcates,
        d_bif=positive_root(A, B, C) if bifurcates else None,
        family=_family(grid),
        self_diffusion=self_diffusion,
    )


def _coefficients(p: ModelParams, lam: Number):
    u, v, alpha, beta, det_j, tr_j = _invariants(p)
    A = lam * lam
    B = p.d12 * v * lam * lam + p.d21 * u * lam * lam - tr_j * lam
    C = -p.d12 * alpha * lam - p.d21 * beta * lam + det_j
    return A, B, C


def _self_coefficients(p: ModelParams, lam: Number):
    u, v, alpha, beta, det_j, tr_j = _invariants(p)
    A, B, _ = _coefficients(p, lam)
    B_tilde = B + 2 * (p.d11 * u + p.d22 * v) * lam * lam
    C_tilde = (
        -p.d12 * (alpha - 2 * p.d22 * v * v * lam) * lam
        - p.d21 * (beta - 2 * p.d11 * u * u * lam) * lam
        + 2 * u * v * lam * ((p.d11 * p.a2 + p.d22 * p.a1) + 2 * p.d11 * p.d22 * lam)
        + det_j
    )
    return A, B_tilde, C_tilde


def mode_polynomial(
    p: ModelParams, k: int, lam: Number | None = None, grid: Grid | None = None
) -> ModeReport:
    if lam is None:
        lam = 0 if k == 0 else eigenvalue(k, grid)
    A, B, C = _coefficients(p, lam)
    return _report(k, lam, A, B, C, grid, self_diffusion=False)


def self_diffusion_polynomial(
    p: ModelParams, k: int, lam: Number | None = None, grid: Grid | None = None
) -> ModeReport:
    if lam is None:
        lam = 0 if k == 0 else eigenvalue(k, grid)
    A, B, C = _self_coefficients(p, lam)
    return _report(k, lam, A, B, C, grid, self_diffusion=True)


def shifted_polynomial_decomposition(
    p: ModelParams, k: int, lam: Number | None = None, grid: Grid | None = None
) -> tuple[Number, Number]:
    """(d_s, p_s) with P~_k(d) = P_k(d - d_s) + p_s for every d."""
    if lam is None:
        lam = 0 if k == 0 else eigenvalue(k, grid)
    u, v = admissible_coexistence(p)
    A, B, C = _coefficients(p, lam)
    _, B_tilde, C_tilde = _self_coefficients(p, lam)
    if is_zero(A):
        d_s = -(p.d11 * u + p.d22 * v)
    else:
        d_s = (B - B_tilde) / (2 * A)
    p_s = C_tilde - (A * d_s * d_s - B * d_s + C)
    return d_s, p_s


def d21_disappearance_threshold(
    p: ModelParams, k: int, lam: Number | None = None, grid: Grid | None = None
) -> Threshold:
    if k < 1:
        raise DomainError("threshold is defined for modes k >= 1")
    if lam is None:
        lam = eigenvalue(k, grid)
    _, _, alpha, beta, det_j, _ = _invariants(p)
    if compare(beta, 0) >= 0:
        raise DomainError("d21 threshold requires beta < 0")
    if compare(alpha * p.d12, det_j / lam) <= 0:
        raise DomainError(f"mode {k} does not bifurcate at d21 = 0")
    return Threshold(
        value=(alpha * p.d12 - det_j / lam) / abs(beta),
        cutoff=alpha * p.d12 / abs(beta),
    )


def d12_disappearance_threshold(
    p: ModelParams, k: int, lam: Number | None = None, grid: Grid | None = None
) -> Threshold:
    if k < 1:
        raise DomainError("threshold is defined for modes k >= 1")
    if lam is None:
        lam = eigenvalue(k, grid)
    _, _, alpha, beta, det_j, _ = _invariants(p)
    if compare(alpha, 0) >= 0:
        raise DomainError("d12 threshold requires alpha < 0")
    if compare(beta * p.d21, det_j / lam) <= 0:
        raise DomainError(f"mode {k} does not bifurcate at d12 = 0")
    return Threshold(
        value=(beta * p.d21 - det_j / lam) / abs(alpha),
        cutoff=beta * p.d21 / abs(alpha),
    )


def d_bif_limit(
    p: ModelParams,
    k: int,
    varied: str,
    lam: Number | None = None,
    grid: Grid | None = None,
) -> BifurcationLimit:
    if k < 1:
        raise DomainError("limits are defined for modes k >= 1")
    if lam is None:
        lam = eigenvalue(k, grid)
    u, v, alpha, beta, _, _ = _invariants(p)
    if varied == "d21":
        quantity, density, name = beta, u, "beta"
    elif varied == "d12":
        quantity, density, name = alpha, v, "alpha"
    else:
        raise DomainError(f"varied coefficient must be 'd12' or 'd21', got {varied!r}")
    sign = compare(quantity, 0)
    if sign < 0:
        raise DomainError(f"{varied} -> inf limit requires {name} >= 0")
    if sign == 0:
        return BifurcationLimit(value=0 * quantity, collapses=True)
    return BifurcationLimit(value=quantity / (density * lam))


def existence_bound(
    p: ModelParams, k: int, lam: Number | None = None, grid: Grid | None = None
) -> ExistenceBound:
    """Case-wise condition on d12/d21 for mode k to bifurcate for some d > 0."""
    if lam is None:
        lam = eigenvalue(k, grid)
    report = classify_regime(p)
    _, _, alpha, beta, det_j, _ = _invariants(p)
    case = report.case
    if case == "2w":
        return ExistenceBound(case=case, coefficient=None, bound=None, satisfied=False)
    if case == "2s":
        return ExistenceBound(case=case, coefficient=None, bound=None, satisfied=True)
    if case in {"1w", "3s"} and compare(alpha, 0) < 0:
        bound = (beta * p.d21 - det_j / lam) / abs(alpha)
        return ExistenceBound(
            case=case,
            coefficient="d12",
            bound=bound,
            satisfied=compare(p.d12, bound) < 0,
        )
    if case in {"3w", "1s"} and compare(beta, 0) < 0:
        bound = (alpha * p.d12 - det_j / lam) / abs(beta)
        return ExistenceBound(
            case=case,
            coefficient="d21",
            bound=bound,
            satisfied=compare(p.d21, bound) < 0,
        )
    # boundary hits: fall back to the sign of C_k itself
    C = _coefficients(p, lam)[2]
    return ExistenceBound(
        case=case, coefficient=None, bound=None, satisfied=compare(C, 0) < 0
    )


def theorem_quadratic(a1: Number, a2: Number, b1: Number, b2: Number, r: Number):
    a, b = a1 * a2, b1 * b2
    return (
        -a2 * (a + b + 2 * b2 * b2) * r * r
        + (b1 + b2) * (3 * a + b) * r
        - a1 * (a + b + 2 * b1 * b1)
    )


def theorem_large_cross(
    p: ModelParams, ks: range | list[int] | None = None, grid: Grid | None = None
) -> TheoremCheck:
    """Large equal cross-diffusion in the weak regime.

    The growth ratio r1/r2 is set to the maximizer of Q; r2 is taken from ``p``.
    """
    a1, a2, b1, b2 = p.a1, p.a2, p.b1, p.b2
    if min(a1, a2, b1, b2) <= 0:
        raise DomainError("a_i and b_i must be positive")
    ks = range(1, MODES_MAX + 1) if ks is None else ks
    a, b = a1 * a2, b1 * b2
    cond_det_j = compare(b, a) < 0
    cond_disc = compare(4 * a, (b1 + b2) ** 2) < 0
    r_star = (b1 + b2) * (3 * a + b) / (2 * a2 * (a + b + 2 * b2 * b2))
    q_at_r_star = theorem_quadratic(a1, a2, b1, b2, r_star)

    r2 = p.r2 if p.r2 > 0 else 1
    tuned = p.with_value("r1", r_star * r2).with_value("r2", r2)
    equilibria = coexistence_state(tuned)
    alpha_plus_beta = det_j = None
    if equilibria.coexistence is not None:
        u, v = equilibria.coexistence
        alpha, beta = alpha_beta_at(tuned, u, v)
        alpha_plus_beta = alpha + beta
        det_j = (a - b) * u * v

    tuned_regime = classify_regime(tuned)
    # b1 = b2 sits between the two weak cases reachable at r*
    case = "boundary" if b1 == b2 else tuned_regime.case

    thresholds = {}
    if cond_det_j and cond_disc and tuned_regime.regime == Regime.WEAK:
        for k in ks:
            if k < 1:
                continue
            lam = eigenvalue(k, grid)
            thresholds[k] = float(det_j) / (float(alpha_plus_beta) * lam)

    return TheoremCheck(
        cond_det_j=cond_det_j,
        cond_disc=cond_disc,
        r_star=r_star,
        q_at_r_star=q_at_r_star,
        alpha_plus_beta=alpha_plus_beta,
        det_j=det_j,
        thresholds=thresholds,
        case=case,
    )


def mode_table(
    p: ModelParams,
    ks: range | list[int] | None = None,
    grid: Grid | None = None,
    varied: str | None = None,
) -> list[ModeReport]:
    ks = range(0, MODES_MAX + 1) if ks is None else ks
    self_diffusion = p.d11 != 0 or p.d22 != 0
    polynomial = self_diffusion_polynomial if self_diffusion else mode_polynomial
    reports = []
    for k in ks:
        report = polynomial(p, k, grid=grid)
        if varied is not None and k >= 1 and not self_diffusion:
            try:
                limit = d_bif_limit(p, k, varied, lam=report.lam)
                report = replace(report, d_bif_limit=float(limit.value))
            except DomainError:
                pass
        reports.append(report)
    return reports
