"""Finite differences for the stationary system on (0, 1) with zero-flux ends.

Unknowns are interleaved as (u0, v0, u1, v1, ...). Ghost values are mirrored
(u[-1] = u[1], u[N] = u[N-2]) on the primitive variables, which also mirrors
the flux composites and keeps cos(k pi x) an exact discrete eigenvector.
"""

import numpy as np
from scipy.integrate import trapezoid

from components.analysis.model import diffusion_jacobian, reaction_jacobian
from components.exceptions import DomainError
from components.models.params import ModelParams, NumericParams
from components.models.states import Grid, StateVector
from components.numerics.banded import BandedMatrix
from config.defaults import ROUNDOFF_FACTOR

__all__ = [
    "laplacian",
    "fluxes",
    "residual",
    "jacobian",
    "parameter_derivative",
    "l2_norm",
    "roundoff_floor",
    "is_elliptic",
    "cosine_mode",
    "discrete_eigenvalues",
    "homogeneous_block_spectrum",
]


def _numeric(p: ModelParams | NumericParams) -> NumericParams:
    return p if isinstance(p, NumericParams) else p.numeric()


def laplacian(f: np.ndarray, h: float) -> np.ndarray:
    padded = np.pad(f, 1, mode="reflect")
    return (padded[:-2] - 2.0 * f + padded[2:]) / (h * h)


def fluxes(p, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q = _numeric(p)
    phi = (q.d1 + q.d11 * u + q.d12 * v) * u
    psi = (q.d2 + q.d22 * v + q.d21 * u) * v
    return phi, psi


def _split(data: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return data[0::2], data[1::2]


def residual_data(p, data: np.ndarray, grid: Grid) -> np.ndarray:
    q = _numeric(p)
    u, v = _split(data)
    phi, psi = fluxes(q, u, v)
    out = np.empty_like(data)
    out[0::2] = laplacian(phi, grid.h) + (q.r1 - q.a1 * u - q.b1 * v) * u
    out[1::2] = laplacian(psi, grid.h) + (q.r2 - q.b2 * u - q.a2 * v) * v
    return out


def residual(p, s: StateVector) -> np.ndarray:
    return residual_data(p, s.data, s.grid)


def _stencil_weights(grid: Grid) -> tuple[np.ndarray, np.ndarray, float]:
    inv = 1.0 / (grid.h * grid.h)
    left = np.full(grid.n, inv)
    right = np.full(grid.n, inv)
    left[0], right[0] = 0.0, 2.0 * inv
    left[-1], right[-1] = 2.0 * inv, 0.0
    return left, right, -2.0 * inv


def jacobian_data(p, data: np.ndarray, grid: Grid) -> BandedMatrix:
    q = _numeric(p)
    u, v = _split(data)
    n = grid.n

    phi_u = q.d1 + 2.0 * q.d11 * u + q.d12 * v
    phi_v = q.d12 * u
    psi_u = q.d21 * v
    psi_v = q.d2 + 2.0 * q.d22 * v + q.d21 * u

    f_u = q.r1 - 2.0 * q.a1 * u - q.b1 * v
    f_v = -q.b1 * u
    g_u = -q.b2 * v
    g_v = q.r2 - q.b2 * u - 2.0 * q.a2 * v

    left, right, centre = _stencil_weights(grid)
    nodes = np.arange(n)
    matrix = BandedMatrix.zeros(2 * n)

    def couple(rows_node, cols_node, weight):
        ru, rv = 2 * rows_node, 2 * rows_node + 1
        cu, cv = 2 * cols_node, 2 * cols_node + 1
        matrix.put(ru, cu, weight * phi_u[cols_node])
        matrix.put(ru, cv, weight * phi_v[cols_node])
        matrix.put(rv, cu, weight * psi_u[cols_node])
        matrix.put(rv, cv, weight * psi_v[cols_node])

    couple(nodes, nodes, centre)
    couple(nodes[1:], nodes[:-1], left[1:])
    couple(nodes[:-1], nodes[1:], right[:-1])

    matrix.put(2 * nodes, 2 * nodes, f_u)
    matrix.put(2 * nodes, 2 * nodes + 1, f_v)
    matrix.put(2 * nodes + 1, 2 * nodes, g_u)
    matrix.put(2 * nodes + 1, 2 * nodes + 1, g_v)
    return matrix


def jacobian(p, s: StateVector) -> BandedMatrix:
    return jacobian_data(p, s.data, s.grid)


def parameter_derivative(p, s: StateVector, param: str) -> np.ndarray:
    """Derivative of the residual with respect to an active parameter."""
    u, v, h = s.u, s.v, s.grid.h
    zero = np.zeros_like(u)
    match param:
        case "d":
            du, dv = laplacian(u, h), laplacian(v, h)
        case "d12":
            du, dv = laplacian(u * v, h), zero
        case "d21":
            du, dv = zero, laplacian(u * v, h)
        case "d11":
            du, dv = laplacian(u * u, h), zero
        case "d22":
            du, dv = zero, laplacian(v * v, h)
        case "r1":
            du, dv = u.copy(), zero
        case "r2":
            du, dv = zero, v.copy()
        case _:
            raise DomainError(f"Unknown active parameter '{param}'")
    out = np.empty(2 * s.grid.n)
    out[0::2], out[1::2] = du, dv
    return out


def l2_norm(s: StateVector) -> tuple[float, float]:
    h = s.grid.h
    return (
        float(np.sqrt(trapezoid(s.u * s.u, dx=h))),
        float(np.sqrt(trapezoid(s.v * s.v, dx=h))),
    )


def roundoff_floor(p, s: StateVector) -> float:
    phi, psi = fluxes(p, s.u, s.v)
    scale = max(float(np.max(np.abs(phi))), float(np.max(np.abs(psi))))
    return ROUNDOFF_FACTOR * np.finfo(float).eps * scale / (s.grid.h**2)


def is_elliptic(p, s: StateVector) -> bool:
    """Whether the symmetrized diffusion matrix is positive definite at every node."""
    q = _numeric(p)
    u, v = s.u, s.v
    phi_u = q.d1 + 2.0 * q.d11 * u + q.d12 * v
    phi_v = q.d12 * u
    psi_u = q.d21 * v
    psi_v = q.d2 + 2.0 * q.d22 * v + q.d21 * u
    off = 0.5 * (phi_v + psi_u)
    return bool(np.all(phi_u > 0) and np.all(phi_u * psi_v - off * off > 0))


def cosine_mode(grid: Grid, k: int) -> np.ndarray:
    return np.cos(k * np.pi * grid.x)


def discrete_eigenvalues(grid: Grid) -> np.ndarray:
    k = np.arange(grid.n)
    return (2.0 * np.sin(0.5 * k * np.pi * grid.h) / grid.h) ** 2


def block_matrices(p, u: float, v: float, grid: Grid) -> np.ndarray:
    """Stack of J* - lambda_k J_Delta* for k = 0..N-1, shape (N, 2, 2)."""
    q = _numeric(p)
    reaction = np.array(reaction_jacobian(q, u, v), dtype=float)
    diffusion = np.array(diffusion_jacobian(q, u, v), dtype=float)
    lam = discrete_eigenvalues(grid)
    return reaction[None, :, :] - lam[:, None, None] * diffusion[None, :, :]


def homogeneous_block_spectrum(p, u: float, v: float, grid: Grid) -> np.ndarray:
    """Spectrum of the Jacobian at a constant state, mode by mode."""
    return np.linalg.eigvals(block_matrices(p, u, v, grid)).ravel()
