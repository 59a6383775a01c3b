"""Pseudo-arclength predictor-corrector loop with event detection.

Stations along a branch are measured in projected arclength: each accepted
step advances it by exactly the step length used in the constraint, so it is
monotone. Events are bracketed between accepted points and refined by
bisection on the same projected arclength.
"""

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.integrate import trapezoid

from components.continuation.points import make_point
from components.exceptions import (
    BranchStalled,
    EigensolveFailed,
    NoConvergence,
    SolverException,
)
from components.logs import logger
from components.models.branches import Branch, BranchPoint, Event, EventKind, Provenance
from components.models.params import ModelParams
from components.models.settings import ContinuationSettings
from components.models.states import StateVector
from components.numerics.discretization import is_elliptic
from components.numerics.newton import (
    compute_tangent,
    numeric_with,
    scaled_norm,
    solve_bordered,
)
from config.defaults import STABILITY_IMAG_TOL

__all__ = ["extend", "correct", "tangent_at", "amplitude"]

# a nontrivial branch whose profile shrinks below this share of its starting
# amplitude is back on a homogeneous state
RECONNECT_RATIO = 0.25


def augmented(point: BranchPoint) -> np.ndarray:
    return np.append(point.state.data, point.value)


def correct(
    p: ModelParams,
    anchor: BranchPoint,
    ds: float,
    param: str,
    settings: ContinuationSettings,
) -> StateVector:
    """Tangent predictor of length ``ds`` from ``anchor``, then bordered correction."""
    predicted = augmented(anchor) + ds * anchor.tangent
    guess = StateVector(anchor.state.grid, predicted[:-1], param, predicted[-1])
    result = solve_bordered(
        p, guess, anchor.tangent, anchor.state, ds, param, settings.newton
    )
    return result.state


def tangent_at(
    p: ModelParams, state: StateVector, param: str, orient: np.ndarray
) -> np.ndarray:
    try:
        return compute_tangent(p, state, param, orient=orient)
    except SolverException:
        return orient / scaled_norm(orient)


def amplitude(state: StateVector) -> float:
    """RMS deviation of the profiles from their spatial means."""
    h = state.grid.h
    du = state.u - trapezoid(state.u, dx=h)
    dv = state.v - trapezoid(state.v, dx=h)
    return float(np.sqrt(np.mean(np.concatenate((du, dv)) ** 2)))


def _projection(state: StateVector, direction: np.ndarray) -> float:
    h = state.grid.h
    du = state.u - trapezoid(state.u, dx=h)
    dv = state.v - trapezoid(state.v, dx=h)
    deviation = np.empty(2 * state.grid.n)
    deviation[0::2], deviation[1::2] = du, dv
    return float(np.dot(deviation, direction))


def _stop_reason(
    p: ModelParams,
    state: StateVector,
    param: str,
    bounds: tuple[float, float],
    settings: ContinuationSettings,
) -> str | None:
    lo, hi = bounds
    if not lo <= state.value <= hi:
        return "parameter out of bounds"
    q = numeric_with(p, param, state.value)
    if min(q.d1, q.d2) <= 0:
        if not settings.allow_negative_d:
            return "standard diffusion reached zero"
        if not is_elliptic(q, state):
            return "ellipticity lost"
    return None


def _reconnected(branch: Branch, point: BranchPoint) -> bool:
    if branch.provenance not in (Provenance.PRIMARY, Provenance.SECONDARY):
        return False
    if len(branch.points) < 4:
        return False
    reference = amplitude(branch.points[1].state)
    if amplitude(point.state) < RECONNECT_RATIO * reference:
        return True
    if branch.seed_direction is not None:
        before = _projection(branch.points[-2].state, branch.seed_direction)
        after = _projection(point.state, branch.seed_direction)
        return before * after < 0
    return False


@dataclass
class _Indicator:
    kind: EventKind
    read: Callable[[BranchPoint], int]


def _fold_sign(point: BranchPoint) -> int:
    return int(np.sign(point.tangent[-1]))


def _real_parity(point: BranchPoint) -> int:
    # sign of the product of the real eigenvalues; a collision of two real
    # eigenvalues into a complex pair leaves it unchanged
    return point.unstable_real % 2


def _oscillatory_count(point: BranchPoint) -> int:
    return point.stability_index - _real_parity(point)


def _indicators(
    start: BranchPoint, end: BranchPoint, settings: ContinuationSettings
) -> list[_Indicator]:
    found = []
    t0, t1 = start.tangent[-1], end.tangent[-1]
    fold = t0 * t1 < 0 and max(abs(t0), abs(t1)) > settings.fold_threshold
    real_crossing = _real_parity(start) != _real_parity(end)
    if fold:
        found.append(_Indicator(EventKind.FOLD, _fold_sign))
    elif real_crossing:
        found.append(_Indicator(EventKind.BRANCH_POINT, _real_parity))
    # a pair crossing moves the unstable count by two; a real crossing by one
    jump = abs(end.stability_index - start.stability_index) - int(real_crossing)
    if jump >= 2:
        found.append(_Indicator(EventKind.HOPF, _oscillatory_count))
    return found


def _evaluate(
    p: ModelParams,
    anchor: BranchPoint,
    s: float,
    param: str,
    settings: ContinuationSettings,
) -> BranchPoint:
    state = correct(p, anchor, s, param, settings)
    secant = np.append(state.data, state.value) - augmented(anchor)
    orient = secant if scaled_norm(secant) > 0 else anchor.tangent
    tangent = tangent_at(p, state, param, orient)
    return make_point(
        numeric_with(p, param, state.value),
        state,
        arclength=anchor.arclength + s,
        tangent=tangent,
    )


def _refine(
    p: ModelParams,
    start: BranchPoint,
    end: BranchPoint,
    ds: float,
    param: str,
    indicator: _Indicator,
    settings: ContinuationSettings,
) -> tuple[Event, BranchPoint]:
    before = indicator.read(start)
    lo, hi = 0.0, ds
    nearest = end
    for _ in range(settings.event_max_bisections):
        if hi - lo <= settings.event_tol:
            break
        mid = 0.5 * (lo + hi)
        try:
            point = _evaluate(p, start, mid, param, settings)
        except (SolverException, EigensolveFailed) as exc:
            logger.debug(f"Event refinement stopped early: {exc}")
            break
        if indicator.read(point) == before:
            lo = mid
        else:
            hi, nearest = mid, point

    try:
        point = _evaluate(p, start, 0.5 * (lo + hi), param, settings)
    except (SolverException, EigensolveFailed):
        point = nearest if nearest is end else replace(nearest)
    event = Event(
        kind=indicator.kind,
        value=point.value,
        arclength=point.arclength,
        bracket=(start.arclength, end.arclength),
        point=point,
    )
    return event, point


def _locate_events(
    p: ModelParams,
    start: BranchPoint,
    end: BranchPoint,
    ds: float,
    param: str,
    settings: ContinuationSettings,
) -> list[tuple[Event, BranchPoint]]:
    """Refined events of one step in arclength order.

    Events refined onto the same station share one point, flagged with the
    first kind found there.
    """
    found = []
    for indicator in _indicators(start, end, settings):
        event, point = _refine(p, start, end, ds, param, indicator, settings)
        if event.kind == EventKind.HOPF and abs(point.critical_imag) <= (
            STABILITY_IMAG_TOL
        ):
            logger.debug(f"Real crossing at {param}={event.value:.8g}, not a Hopf")
            continue
        found.append((event, point))

    located: list[tuple[Event, BranchPoint]] = []
    for event, point in sorted(found, key=lambda item: item[1].arclength):
        shared = next(
            (
                seen
                for _, seen in located
                if abs(seen.arclength - point.arclength) <= settings.event_tol
            ),
            None,
        )
        if shared is not None:
            point = shared
            event.point, event.value = point, point.value
            event.arclength = point.arclength
        if not point.event_flag:
            point.event_flag = event.kind.value
        located.append((event, point))
    return located


def extend(
    p: ModelParams,
    branch: Branch,
    settings: ContinuationSettings | None = None,
    bounds: tuple[float, float] = (-np.inf, np.inf),
) -> Branch:
    """Continue ``branch`` from its last point until a stop condition.

    Raises BranchStalled, carrying the branch as computed so far, when the
    step size underflows.
    """
    settings = settings or ContinuationSettings()
    param = branch.param
    ds = settings.ds_initial
    log = logger.bind(branch=branch.id)
    successes = 0

    for _ in range(settings.max_steps):
        last = branch.last
        try:
            state = correct(p, last, ds, param, settings)
            secant = np.append(state.data, state.value) - augmented(last)
            if scaled_norm(secant) > 2.0 * ds:
                raise NoConvergence("corrected point left the step neighbourhood")
            reason = _stop_reason(p, state, param, bounds, settings)
            if reason is None:
                point = make_point(
                    numeric_with(p, param, state.value),
                    state,
                    arclength=last.arclength + ds,
                    tangent=tangent_at(p, state, param, secant),
                )
        except (SolverException, EigensolveFailed) as exc:
            ds *= 0.5
            successes = 0
            log.debug(f"Step rejected ({exc}), ds={ds:.3e}")
            if ds < settings.ds_min:
                branch.stop_reason = "stalled"
                log.warning(f"Stalled at {param}={last.value:.6g}")
                raise BranchStalled(
                    f"branch {branch.id} stalled at {param}={last.value:.6g}",
                    branch=branch,
                )
            continue

        if reason is not None:
            branch.stop_reason = reason
            break

        for event, event_point in _locate_events(p, last, point, ds, param, settings):
            if event_point is not point and event_point is not branch.last:
                branch.points.append(event_point)
            branch.add_event(event)
            log.info(f"{event.kind.value} at {param}={event.value:.8g}")
        branch.points.append(point)

        if _reconnected(branch, point):
            branch.stop_reason = "reconnected with a homogeneous state"
            break

        successes += 1
        if successes >= settings.ds_growth_after:
            ds = min(ds * settings.ds_growth, settings.ds_max)
            successes = 0
    else:
        branch.stop_reason = "max steps"

    return branch
