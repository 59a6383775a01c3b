import numpy as np

from components.models.branches import BranchPoint
from components.models.params import ModelParams, NumericParams
from components.models.states import StateVector
from components.numerics.discretization import l2_norm
from components.numerics.stability import SpectrumSummary, spectrum


def make_point(
    p: ModelParams | NumericParams,
    state: StateVector,
    arclength: float = 0.0,
    tangent: np.ndarray | None = None,
    summary: SpectrumSummary | None = None,
    event_flag: str = "",
) -> BranchPoint:
    """Wrap a converged state with its projections and stability diagnostics."""
    if summary is None:
        summary = spectrum(p, state)
    norm_u, norm_v = l2_norm(state)
    return BranchPoint(
        value=float(state.value),
        state=state,
        norm_u=norm_u,
        norm_v=norm_v,
        u0=float(state.u[0]),
        v0=float(state.v[0]),
        stability_index=summary.unstable,
        min_u=float(np.min(state.u)),
        min_v=float(np.min(state.v)),
        arclength=float(arclength),
        tangent=tangent,
        event_flag=event_flag,
        unstable_real=summary.unstable_real,
        unstable_complex=summary.unstable_complex,
        critical_imag=summary.critical.imag,
    )
