"""Damped Newton corrector on the banded discretization.

``solve_system`` is the shared core: it only needs a residual function and a
Jacobian factory whose result has a ``solve(rhs)`` method. Standalone solves,
the pseudo-arclength corrector and the implicit time step are all thin
wrappers around it.
"""

from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np

from components.exceptions import NoConvergence, SingularJacobian
from components.logs import logger
from components.models.params import ModelParams, NumericParams
from components.models.settings import NewtonSettings
from components.models.states import StateVector
from components.numerics.banded import BandedMatrix
from components.numerics.discretization import (
    jacobian_data,
    parameter_derivative,
    residual_data,
    roundoff_floor,
)

__all__ = [
    "NewtonResult",
    "solve_system",
    "solve",
    "solve_bordered",
    "compute_tangent",
    "numeric_with",
    "scaled_dot",
    "scaled_norm",
]


class LinearSystem(Protocol):
    def solve(self, rhs: np.ndarray) -> np.ndarray: ...


@dataclass(eq=False)
class NewtonResult:
    data: np.ndarray
    iterations: int
    residual_norm: float
    history: list[float] = field(default_factory=list)
    state: StateVector | None = None


def _sup(r: np.ndarray) -> float:
    return float(np.max(np.abs(r))) if np.all(np.isfinite(r)) else np.inf


def solve_system(
    residual_fn: Callable[[np.ndarray], np.ndarray],
    jacobian_fn: Callable[[np.ndarray], LinearSystem],
    x0: np.ndarray,
    settings: NewtonSettings | None = None,
    tol: float | None = None,
) -> NewtonResult:
    settings = settings or NewtonSettings()
    tol = settings.tol_residual if tol is None else max(tol, settings.tol_residual)

    x = np.array(x0, dtype=float)
    norm = _sup(residual_fn(x))
    if not np.isfinite(norm):
        raise NoConvergence("residual is not finite at the initial guess", state=x)
    history = [norm]
    best_x, best_norm = x, norm

    for iteration in range(settings.max_iter + 1):
        if norm <= tol:
            return NewtonResult(x, iteration, norm, history)
        if iteration == settings.max_iter:
            break

        r = residual_fn(x)
        try:
            dx = jacobian_fn(x).solve(-r)
        except SingularJacobian as exc:
            raise SingularJacobian(
                str(exc), state=best_x, residual_norm=best_norm, iterations=iteration
            ) from exc

        step = 1.0
        trial, trial_norm = x, np.inf
        while step >= settings.damping_min:
            trial = x + step * dx
            trial_norm = _sup(residual_fn(trial))
            if trial_norm < norm:
                break
            step *= settings.damping_factor
        if not np.isfinite(trial_norm):
            raise SingularJacobian(
                "Newton step produced a non-finite residual",
                state=best_x,
                residual_norm=best_norm,
                iterations=iteration + 1,
            )

        x, norm = trial, trial_norm
        history.append(norm)
        if norm < best_norm:
            best_x, best_norm = x, norm

    raise NoConvergence(
        f"no convergence after {settings.max_iter} iterations "
        f"(residual {best_norm:.3e}, tolerance {tol:.3e})",
        state=best_x,
        residual_norm=best_norm,
        iterations=settings.max_iter,
    )


def numeric_with(
    p: ModelParams | NumericParams, param: str, value: float
) -> NumericParams:
    q = p if isinstance(p, NumericParams) else p.numeric()
    if param == "d":
        return q._replace(d1=float(value), d2=float(value))
    return q._replace(**{param: float(value)})


def solve(
    p: ModelParams | NumericParams,
    s0: StateVector,
    settings: NewtonSettings | None = None,
) -> NewtonResult:
    grid = s0.grid
    result = solve_system(
        lambda x: residual_data(p, x, grid),
        lambda x: jacobian_data(p, x, grid),
        s0.data,
        settings,
        tol=roundoff_floor(p, s0),
    )
    result.state = s0.with_data(result.data)
    logger.debug(
        f"Newton converged in {result.iterations} iterations, "
        f"residual {result.residual_norm:.3e}"
    )
    return result


# scaled arclength: weight 1 on the parameter, 1/(2N) per squared state entry
def scaled_dot(a: np.ndarray, b: np.ndarray) -> float:
    size = a.size - 1
    return float(a[-1] * b[-1] + np.dot(a[:-1], b[:-1]) / size)


def scaled_norm(a: np.ndarray) -> float:
    return float(np.sqrt(scaled_dot(a, a)))


@dataclass(eq=False)
class BorderedSystem:
    matrix: BandedMatrix
    f_mu: np.ndarray
    c_x: np.ndarray
    c_mu: float

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        both = self.matrix.solve(np.column_stack((rhs[:-1], self.f_mu)))
        y, z = both[:, 0], both[:, 1]
        denom = self.c_mu - float(np.dot(self.c_x, z))
        if denom == 0.0 or not np.isfinite(denom):
            raise SingularJacobian("bordered system is singular")
        d_mu = (rhs[-1] - float(np.dot(self.c_x, y))) / denom
        return np.append(y - z * d_mu, d_mu)


def _augmented(s: StateVector) -> np.ndarray:
    return np.append(s.data, s.value)


def solve_bordered(
    p: ModelParams | NumericParams,
    s: StateVector,
    tangent: np.ndarray,
    anchor: StateVector,
    ds: float,
    param: str,
    settings: NewtonSettings | None = None,
) -> NewtonResult:
    """Correct ``s`` onto the branch subject to <tangent, X - anchor> = ds.

    ``X`` stacks the state and the value of ``param``; ``tangent`` has the same
    layout and is normalized in the scaled norm.
    """
    grid = s.grid
    x_anchor = _augmented(anchor)
    size = tangent.size - 1
    c_x = tangent[:-1] / size
    c_mu = float(tangent[-1])

    def residual_fn(x: np.ndarray) -> np.ndarray:
        q = numeric_with(p, param, x[-1])
        constraint = scaled_dot(tangent, x - x_anchor) - ds
        return np.append(residual_data(q, x[:-1], grid), constraint)

    def jacobian_fn(x: np.ndarray) -> BorderedSystem:
        q = numeric_with(p, param, x[-1])
        state = StateVector(grid, x[:-1], param, x[-1])
        return BorderedSystem(
            matrix=jacobian_data(q, x[:-1], grid),
            f_mu=parameter_derivative(q, state, param),
            c_x=c_x,
            c_mu=c_mu,
        )

    result = solve_system(
        residual_fn,
        jacobian_fn,
        _augmented(s),
        settings,
        tol=roundoff_floor(numeric_with(p, param, s.value), s),
    )
    result.state = StateVector(grid, result.data[:-1], param, result.data[-1])
    return result


def compute_tangent(
    p: ModelParams | NumericParams,
    s: StateVector,
    param: str,
    orient: np.ndarray | None = None,
) -> np.ndarray:
    """Unit tangent (scaled norm) of the branch through ``s``.

    Solves J z = F_mu and takes (-z, 1); ``orient`` fixes the sign.
    """
    q = numeric_with(p, param, s.value)
    z = jacobian_data(q, s.data, s.grid).solve(parameter_derivative(q, s, param))
    tangent = np.append(-z, 1.0)
    tangent /= scaled_norm(tangent)
    if orient is not None and scaled_dot(tangent, orient) < 0:
        tangent = -tangent
    return tangent
