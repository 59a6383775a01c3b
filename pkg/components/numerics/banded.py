from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from components.exceptions import SingularJacobian

# interleaved (u, v) unknowns couple node i to nodes i-1, i, i+1
LOWER = 3
UPPER = 3


@dataclass(eq=False)
class BandedMatrix:
    """Square matrix in LAPACK band storage.

    Entry (i, j) lives at ``ab[UPPER + i - j, j]``.
    """

    ab: np.ndarray
    lower: int = LOWER
    upper: int = UPPER

    @classmethod
    def zeros(cls, size: int, lower: int = LOWER, upper: int = UPPER) -> "BandedMatrix":
        return cls(np.zeros((lower + upper + 1, size)), lower, upper)

    @property
    def size(self) -> int:
        return self.ab.shape[1]

    def put(self, rows: np.ndarray, cols: np.ndarray, values: np.ndarray) -> None:
        """Accumulate values at (rows, cols); entries outside the band are dropped."""
        rows, cols = np.asarray(rows), np.asarray(cols)
        values = np.broadcast_to(values, rows.shape)
        offset = self.upper + rows - cols
        inside = (offset >= 0) & (offset <= self.lower + self.upper)
        inside &= (cols >= 0) & (cols < self.size)
        np.add.at(self.ab, (offset[inside], cols[inside]), values[inside])

    def to_dense(self) -> np.ndarray:
        n = self.size
        dense = np.zeros((n, n))
        for offset in range(self.lower + self.upper + 1):
            k = self.upper - offset
            cols = np.arange(max(0, k), min(n, n + k))
            dense[cols - k, cols] = self.ab[offset, cols]
        return dense

    def matvec(self, x: np.ndarray) -> np.ndarray:
        n = self.size
        out = np.zeros(n)
        for offset in range(self.lower + self.upper + 1):
            k = self.upper - offset
            cols = np.arange(max(0, k), min(n, n + k))
            out[cols - k] += self.ab[offset, cols] * x[cols]
        return out

    def shifted(self, scale: float, shift: float) -> "BandedMatrix":
        """shift * I + scale * self."""
        ab = scale * self.ab
        ab[self.upper, :] += shift
        return BandedMatrix(ab, self.lower, self.upper)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        try:
            result = solve_banded(
                (self.lower, self.upper), self.ab, rhs, check_finite=False
            )
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise SingularJacobian(f"banded factorization failed: {exc}") from exc
        if not np.all(np.isfinite(result)):
            raise SingularJacobian("banded solve produced non-finite values")
        return result
