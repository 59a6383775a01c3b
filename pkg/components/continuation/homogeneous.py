"""The trivial branch: the coexistence state followed analytically in one parameter.

Branch points are sign changes of det(J* - lambda_k^h J_Delta*) over the
discrete Neumann eigenvalues; Hopf points are sign changes of the block trace
where the determinant stays positive.
"""

import numpy as np
from scipy.optimize import brentq

from components.analysis.model import coexistence_state
from components.exceptions import DomainError
from components.logs import logger
from components.models.branches import Branch, Event, EventKind, Provenance
from components.models.params import ModelParams
from components.models.states import Grid, StateVector
from components.numerics.discretization import block_matrices, cosine_mode
from components.numerics.newton import numeric_with, scaled_norm
from components.numerics.stability import summarize
from components.continuation.points import make_point
from config.defaults import HOMOGENEOUS_SAMPLES, HOMOGENEOUS_XTOL

__all__ = ["continue_homogeneous", "homogeneous_state"]


def homogeneous_state(
    p: ModelParams, param: str, value: float
) -> tuple[float, float] | None:
    """Admissible coexistence state at ``param = value``, or None."""
    try:
        q = p.with_value(param, float(value))
    except ValueError:
        return None
    equilibria = coexistence_state(q)
    if not equilibria.admissible:
        return None
    u, v = equilibria.coexistence
    return float(u), float(v)


def _state_slope(p: ModelParams, param: str) -> tuple[float, float]:
    den = float(p.a1 * p.a2 - p.b1 * p.b2)
    match param:
        case "r1":
            return float(p.a2) / den, -float(p.b2) / den
        case "r2":
            return -float(p.b1) / den, float(p.a1) / den
    return 0.0, 0.0


def _determinants(blocks: np.ndarray) -> np.ndarray:
    return blocks[..., 0, 0] * blocks[..., 1, 1] - blocks[..., 0, 1] * blocks[..., 1, 0]


def _traces(blocks: np.ndarray) -> np.ndarray:
    return blocks[..., 0, 0] + blocks[..., 1, 1]


def _null_vector(block: np.ndarray) -> np.ndarray:
    candidates = (
        np.array([-block[0, 1], block[0, 0]]),
        np.array([block[1, 1], -block[1, 0]]),
    )
    best = max(candidates, key=lambda c: float(np.hypot(*c)))
    size = float(np.hypot(*best))
    return best / size if size > 0 else np.array([1.0, 0.0])


def _longest_run(mask: list[bool]) -> tuple[int, int] | None:
    best, start = None, None
    for i, ok in enumerate([*mask, False]):
        if ok and start is None:
            start = i
        elif not ok and start is not None:
            if best is None or i - start > best[1] - best[0] + 1:
                best = (start, i - 1)
            start = None
    return best


def _crossings(values: np.ndarray) -> np.ndarray:
    """Indices i with a sign change on [i, i+1], per column."""
    sign = np.sign(values)
    return (sign[:-1] * sign[1:] < 0) | ((sign[1:] == 0) & (sign[:-1] != 0))


def continue_homogeneous(
    p: ModelParams,
    param: str,
    param_range: tuple[float, float],
    grid: Grid | None = None,
    samples: int = HOMOGENEOUS_SAMPLES,
    xtol: float = HOMOGENEOUS_XTOL,
) -> Branch:
    grid = grid or Grid()
    lo, hi = sorted(float(x) for x in param_range)
    mus = np.linspace(lo, hi, samples)
    states = [homogeneous_state(p, param, mu) for mu in mus]

    run = _longest_run([state is not None for state in states])
    if run is None:
        raise DomainError(
            f"coexistence state is not admissible for {param} in [{lo:g}, {hi:g}]"
        )
    first, last = run
    if first > 0 or last < samples - 1:
        logger.warning(
            f"Homogeneous branch truncated to admissible range "
            f"{param} in [{mus[first]:.6g}, {mus[last]:.6g}]"
        )
    mus = mus[first : last + 1]
    origin = float(mus[0])

    def blocks_at(mu: float) -> np.ndarray:
        u, v = homogeneous_state(p, param, mu) or (np.nan, np.nan)
        return block_matrices(numeric_with(p, param, mu), u, v, grid)

    blocks = np.stack([blocks_at(mu) for mu in mus])
    dets, traces = _determinants(blocks), _traces(blocks)

    du, dv = _state_slope(p, param)

    def tangent_at() -> np.ndarray:
        tangent = np.empty(2 * grid.n + 1)
        tangent[0:-1:2], tangent[1:-1:2], tangent[-1] = du, dv, 1.0
        return tangent / scaled_norm(tangent)

    def point_at(mu: float, flag: str = ""):
        u, v = homogeneous_state(p, param, mu)
        state = StateVector.constant(grid, u, v, param=param, value=mu)
        summary = summarize(np.linalg.eigvals(blocks_at(mu)).ravel())
        return make_point(
            numeric_with(p, param, mu),
            state,
            arclength=mu - origin,
            tangent=tangent_at(),
            summary=summary,
            event_flag=flag,
        )

    branch = Branch(id=0, param=param, provenance=Provenance.HOMOGENEOUS)
    events: list[Event] = []

    crossed = _crossings(dets)
    for i, k in zip(*np.nonzero(crossed[:, 1:])):
        k = int(k) + 1
        a, b = float(mus[i]), float(mus[i + 1])
        root = brentq(lambda mu: _determinants(blocks_at(mu)[k]), a, b, xtol=xtol)
        c = _null_vector(blocks_at(root)[k])
        profile = cosine_mode(grid, k)
        kernel = np.empty(2 * grid.n)
        kernel[0::2], kernel[1::2] = c[0] * profile, c[1] * profile
        events.append(
            Event(
                kind=EventKind.BRANCH_POINT,
                value=root,
                arclength=root - origin,
                bracket=(a - origin, b - origin),
                mode_hint=k,
                kernel=kernel,
            )
        )

    crossed = _crossings(traces)
    for i, k in zip(*np.nonzero(crossed)):
        k = int(k)
        a, b = float(mus[i]), float(mus[i + 1])
        root = brentq(lambda mu: _traces(blocks_at(mu)[k]), a, b, xtol=xtol)
        if _determinants(blocks_at(root)[k]) <= 0:
            continue
        events.append(
            Event(
                kind=EventKind.HOPF,
                value=root,
                arclength=root - origin,
                bracket=(a - origin, b - origin),
                mode_hint=k,
            )
        )

    events.sort(key=lambda event: (event.value, event.mode_hint))
    markers: dict[float, list[Event]] = {}
    for event in events:
        markers.setdefault(event.value, []).append(event)
    for mu in sorted({*map(float, mus), *markers}):
        at_mu = markers.get(mu, [])
        point = point_at(mu, at_mu[0].kind.value if at_mu else "")
        branch.points.append(point)
        for event in at_mu:
            event.point = point
            branch.add_event(event)
            logger.info(
                f"{event.kind.value} on the homogeneous branch at "
                f"{param}={mu:.10g} (k={event.mode_hint})"
            )

    branch.stop_reason = "range end"
    return branch
