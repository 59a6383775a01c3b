"""Branch switching at simple branch points.

The new branch leaves the event point along the Jacobian's null direction,
made orthogonal to the parent's tangent. The first point is obtained with the
pseudo-arclength corrector itself (constraint along that direction), so the
parameter is free to move away from the bifurcation value.
"""

from dataclasses import replace

import numpy as np

from components.continuation.engine import amplitude, extend, tangent_at
from components.continuation.points import make_point
from components.exceptions import (
    BranchStalled,
    EigensolveFailed,
    SingularJacobian,
    SolverException,
    SwitchFailed,
)
from components.logs import logger
from components.models.branches import Branch, BranchPoint, Event, EventKind, Provenance
from components.models.params import ModelParams
from components.models.settings import ContinuationSettings
from components.models.states import StateVector
from components.numerics.discretization import jacobian_data
from components.numerics.newton import (
    numeric_with,
    scaled_dot,
    scaled_norm,
    solve_bordered,
)

__all__ = ["kernel_vector", "switch_branch"]

INVERSE_ITERATIONS = 4


def _rms(data: np.ndarray) -> float:
    return float(np.sqrt(np.mean(data * data)))


def kernel_vector(p: ModelParams, point: BranchPoint, param: str) -> np.ndarray:
    """Approximate null vector of the Jacobian at ``point`` by inverse iteration."""
    q = numeric_with(p, param, point.value)
    matrix = jacobian_data(q, point.state.data, point.state.grid)
    scale = float(np.max(np.abs(matrix.ab)))
    rng = np.random.default_rng(0)
    w = rng.standard_normal(matrix.size)
    w /= _rms(w)
    shift = 0.0
    for _ in range(INVERSE_ITERATIONS):
        try:
            w = matrix.shifted(1.0, -shift).solve(w)
        except SingularJacobian:
            # exactly singular: a tiny shift keeps the iteration well posed
            shift = 1e-10 * scale
            w = matrix.shifted(1.0, -shift).solve(w)
        w /= _rms(w)
    return w


def _direction(kernel: np.ndarray, tangent: np.ndarray | None) -> np.ndarray:
    direction = np.append(kernel, 0.0)
    if tangent is not None:
        direction = direction - scaled_dot(direction, tangent) * tangent
    size = scaled_norm(direction)
    if size == 0:
        raise SwitchFailed("null direction is parallel to the branch tangent")
    return direction / size


def _seed(
    p: ModelParams,
    parent: Branch,
    event: Event,
    direction: np.ndarray,
    epsilon: float,
    settings: ContinuationSettings,
) -> BranchPoint:
    base = event.point
    param = parent.param
    predicted = np.append(base.state.data, base.value) + epsilon * direction
    guess = StateVector(base.state.grid, predicted[:-1], param, predicted[-1])
    state = solve_bordered(
        p, guess, direction, base.state, epsilon, param, settings.newton
    ).state
    if parent.provenance == Provenance.HOMOGENEOUS and amplitude(state) < 0.1 * epsilon:
        raise SwitchFailed("corrector fell back onto the homogeneous branch")
    secant = np.append(state.data, state.value) - np.append(base.state.data, base.value)
    return make_point(
        numeric_with(p, param, state.value),
        state,
        arclength=epsilon,
        tangent=tangent_at(p, state, param, secant),
    )


def switch_branch(
    p: ModelParams,
    parent: Branch,
    event: Event,
    settings: ContinuationSettings | None = None,
    bounds: tuple[float, float] = (-np.inf, np.inf),
    branch_id: int | None = None,
    sign: int = 1,
) -> Branch:
    """Leave ``parent`` at ``event`` and continue the emanating branch.

    Both orientations of the null direction are tried, ``sign`` first.
    A branch that stalls is returned as far as it got.
    """
    settings = settings or ContinuationSettings()
    if event.kind != EventKind.BRANCH_POINT:
        raise SwitchFailed(f"cannot switch at a {event.kind.value} event")
    if event.point is None:
        raise SwitchFailed("event carries no located point")

    base = event.point
    kernel = event.kernel
    if kernel is None:
        kernel = kernel_vector(p, base, parent.param)
    direction = _direction(kernel, base.tangent)
    epsilon = settings.switch_epsilon * max(_rms(base.state.data), 1e-12)

    for orientation in (sign, -sign):
        oriented = orientation * direction
        try:
            first = _seed(p, parent, event, oriented, epsilon, settings)
        except (SolverException, EigensolveFailed, SwitchFailed) as exc:
            logger.debug(f"Switch with orientation {orientation:+d} failed: {exc}")
            continue

        primary = parent.provenance == Provenance.HOMOGENEOUS
        branch = Branch(
            id=parent.id + 1 if branch_id is None else branch_id,
            param=parent.param,
            provenance=Provenance.PRIMARY if primary else Provenance.SECONDARY,
            parent_id=parent.id,
            parent_event=event,
            depth=parent.depth + 1,
            seed_direction=orientation * kernel if primary else None,
        )
        start = replace(base, arclength=0.0, tangent=oriented, event_flag="")
        branch.points = [start, first]
        logger.info(
            f"Switched from branch {parent.id} at {parent.param}={base.value:.8g} "
            f"onto branch {branch.id}"
        )
        try:
            return extend(p, branch, settings, bounds)
        except BranchStalled as exc:
            logger.warning(str(exc))
            return exc.branch

    raise SwitchFailed(
        f"could not leave branch {parent.id} at {parent.param}={base.value:.8g}"
    )
