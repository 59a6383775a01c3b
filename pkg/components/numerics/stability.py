from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvals

from components.exceptions import EigensolveFailed
from components.models.params import ModelParams, NumericParams
from components.models.states import StateVector
from components.numerics.discretization import jacobian_data
from config.defaults import STABILITY_IMAG_TOL, STABILITY_REAL_TOL


@dataclass(eq=False)
class SpectrumSummary:
    unstable: int
    unstable_real: int
    unstable_complex: int
    marginal: int
    rightmost: complex
    rightmost_imag: float
    # eigenvalue closest to the imaginary axis
    critical: complex = 0j
    eigenvalues: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.unstable < 0:
            raise ValueError("unstable", "'unstable' must be >= 0")

    @property
    def stable(self) -> bool:
        return self.unstable == 0


def summarize(eigenvalues: np.ndarray, keep: bool = False) -> SpectrumSummary:
    eigenvalues = np.asarray(eigenvalues, dtype=complex)
    real, imag = eigenvalues.real, eigenvalues.imag
    unstable = real > STABILITY_REAL_TOL
    oscillatory = np.abs(imag) > STABILITY_IMAG_TOL
    index = int(np.argmax(real))
    # a rightmost complex pair reports the positive imaginary part
    rightmost = complex(real[index], abs(imag[index]))
    nearest = int(np.argmin(np.abs(real)))
    return SpectrumSummary(
        unstable=int(np.count_nonzero(unstable)),
        unstable_real=int(np.count_nonzero(unstable & ~oscillatory)),
        unstable_complex=int(np.count_nonzero(unstable & oscillatory)),
        marginal=int(np.count_nonzero(np.abs(real) <= STABILITY_REAL_TOL)),
        rightmost=rightmost,
        rightmost_imag=rightmost.imag,
        critical=complex(real[nearest], abs(imag[nearest])),
        eigenvalues=eigenvalues if keep else None,
    )


def spectrum(
    p: ModelParams | NumericParams, s: StateVector, keep: bool = False
) -> SpectrumSummary:
    """Dense eigensolve of the linearization of the time-dependent problem at ``s``."""
    dense = jacobian_data(p, s.data, s.grid).to_dense()
    try:
        values = eigvals(dense, check_finite=True, overwrite_a=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigensolveFailed(f"eigensolve failed: {exc}", state=s) from exc
    if not np.all(np.isfinite(values)):
        raise EigensolveFailed("eigensolve returned non-finite values", state=s)
    return summarize(values, keep=keep)
