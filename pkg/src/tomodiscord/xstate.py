"""Two-qubit X states: the anti-diagonal-plus-diagonal family.

An X state has nonzero entries only on the main diagonal and the
anti-diagonal, which splits it into two independent 2x2 blocks, one on the
(1,4) corner pair and one on the inner (2,3) pair. Everything of interest,
eigenvalues included, is available in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import ATOL_PSD, ATOL_TRACE, DensityMatrix

X_STRUCTURE_TOL = 1e-10

# Positions that must vanish for the X structure (row, col), upper triangle.
_OFF_X_POSITIONS = ((0, 1), (0, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class XStateParams:
    """Independent parameters of a two-qubit X state.

    Diagonal entries are real and sum to 1; the two coherences are bounded by
    the block positivity conditions |rho14|^2 <= rho11*rho44 and
    |rho23|^2 <= rho22*rho33 (within the PSD tolerance). The remaining matrix
    entries follow by Hermiticity.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex
    rho23: complex

    def __post_init__(self) -> None:
        diag = (self.rho11, self.rho22, self.rho33, self.rho44)
        if any(not math.isfinite(d) for d in diag):
            raise ValueError("diagonal entries must be finite")
        if any(d < -ATOL_PSD or d > 1.0 + ATOL_PSD for d in diag):
            raise ValueError(f"diagonal entries must lie in [0, 1]: {diag}")
        total = sum(diag)
        if abs(total - 1.0) > ATOL_TRACE:
            raise ValueError(f"diagonal sums to {total}, expected 1")
        if abs(self.rho14) ** 2 > self.rho11 * self.rho44 + ATOL_PSD:
            raise ValueError(
                f"|rho14|^2 = {abs(self.rho14)**2:.3e} exceeds rho11*rho44 = "
                f"{self.rho11 * self.rho44:.3e}"
            )
        if abs(self.rho23) ** 2 > self.rho22 * self.rho33 + ATOL_PSD:
            raise ValueError(
                f"|rho23|^2 = {abs(self.rho23)**2:.3e} exceeds rho22*rho33 = "
                f"{self.rho22 * self.rho33:.3e}"
            )

    @property
    def diagonal(self) -> np.ndarray:
        return np.array([self.rho11, self.rho22, self.rho33, self.rho44])

    def to_matrix(self) -> np.ndarray:
        """Dense 4x4 complex matrix with the X sparsity pattern."""
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.rho11, self.rho22, self.rho33, self.rho44
        m[0, 3] = self.rho14
        m[3, 0] = np.conj(self.rho14)
        m[1, 2] = self.rho23
        m[2, 1] = np.conj(self.rho23)
        return m

    def to_density_matrix(self, atol: float = ATOL_PSD) -> DensityMatrix:
        """Embed into a validated two-qubit DensityMatrix."""
        return DensityMatrix(self.to_matrix(), (2, 2), atol=atol)


def xstate_eigenvalues(x: XStateParams) -> np.ndarray:
    """Closed-form spectrum of the X state, block by block.

    The (1,4) block contributes ((rho11+rho44) ± sqrt((rho11-rho44)^2 +
    4|rho14|^2))/2 and the (2,3) block the analogous pair.
    """
    s_outer = x.rho11 + x.rho44
    d_outer = math.sqrt((x.rho11 - x.rho44) ** 2 + 4.0 * abs(x.rho14) ** 2)
    s_inner = x.rho22 + x.rho33
    d_inner = math.sqrt((x.rho22 - x.rho33) ** 2 + 4.0 * abs(x.rho23) ** 2)
    return np.array(
        [
            (s_outer + d_outer) / 2.0,
            (s_outer - d_outer) / 2.0,
            (s_inner + d_inner) / 2.0,
            (s_inner - d_inner) / 2.0,
        ]
    )


def off_x_residual(matrix: np.ndarray) -> float:
    """Largest modulus among the entries an X state requires to vanish."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"X structure is defined for 4x4 matrices, got {m.shape}")
    values = [abs(m[i, j]) for i, j in _OFF_X_POSITIONS]
    values += [abs(m[j, i]) for i, j in _OFF_X_POSITIONS]
    return float(max(values))


def is_x_matrix(matrix: np.ndarray, tol: float = X_STRUCTURE_TOL) -> bool:
    """True when every off-X entry has modulus at most tol."""
    return off_x_residual(matrix) <= tol


def params_from_matrix(matrix: np.ndarray, tol: float = X_STRUCTURE_TOL) -> XStateParams:
    """Extract XStateParams from a 4x4 matrix with X structure within tol."""
    m = np.asarray(matrix, dtype=complex)
    residual = off_x_residual(m)
    if residual > tol:
        raise ValueError(f"matrix is not an X state: off-X residual {residual:.3e}")
    return XStateParams(
        rho11=m[0, 0].real,
        rho22=m[1, 1].real,
        rho33=m[2, 2].real,
        rho44=m[3, 3].real,
        rho14=complex(m[0, 3]),
        rho23=complex(m[1, 2]),
    )
