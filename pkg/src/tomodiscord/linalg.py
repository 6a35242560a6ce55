"""Dense complex linear algebra for small quantum states.

Matrices are plain numpy arrays of complex dtype. The one stateful structure
is :class:`DensityMatrix`, which validates the physics invariants (Hermitian,
unit trace, positive semidefinite) once at construction time and caches its
eigendecomposition. The Hermitian eigensolver is a cyclic Jacobi iteration
with a fixed sweep order, a fixed eigenvector phase convention, and a
deterministic tie-break for degenerate eigenvalues, so decompositions are
reproducible bit for bit for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass

import numpy as np

# Tolerances for validating user-supplied data. Internal pipeline assertions
# are tighter (1e-10 .. 1e-12) and live at their call sites.
ATOL_HERMITIAN = 1e-8
ATOL_TRACE = 1e-8
ATOL_PSD = 1e-8
ATOL_UNITARY = 1e-8

JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
PHASE_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """Jacobi sweep limit exceeded; the input is numerically pathological."""


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with an explicit inner-dimension check."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"incompatible shapes for matmul: {a.shape} x {b.shape}")
    return a @ b


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, block convention (i*rows_b + r, j*cols_b + c) = a_ij * b_rc."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermiticity_residual(m: np.ndarray) -> float:
    """Largest entrywise deviation of m from its conjugate transpose."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T)))


def require_unitary(u: np.ndarray, atol: float = ATOL_UNITARY) -> np.ndarray:
    """Return u as a complex array after checking u†u = I within atol."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary must be square, got shape {u.shape}")
    residual = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if residual > atol:
        raise ValueError(f"matrix is not unitary: max |u†u - I| = {residual:.3e}")
    return u


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Spectral factorization rho = u0† diag(eigenvalues) u0.

    ``eigenvalues`` are real and sorted descending; the columns of
    ``diagonalizer``'s adjoint (i.e. of u0†) are the normalized eigenvectors,
    each phase-fixed so that its first component of modulus > 1e-12 is real
    and positive.
    """

    eigenvalues: np.ndarray
    diagonalizer: np.ndarray

    def __post_init__(self) -> None:
        lam = np.array(self.eigenvalues, dtype=float)
        u0 = np.array(self.diagonalizer, dtype=complex)
        lam.setflags(write=False)
        u0.setflags(write=False)
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "diagonalizer", u0)

    @property
    def eigenvectors(self) -> np.ndarray:
        """Eigenvectors as columns (equals u0†)."""
        return self.diagonalizer.conj().T

    def reconstruct(self) -> np.ndarray:
        """Rebuild the decomposed matrix, u0† diag(lambda) u0."""
        u0 = self.diagonalizer
        return u0.conj().T @ np.diag(self.eigenvalues.astype(complex)) @ u0


def eigendecompose(
    h: np.ndarray,
    atol: float = ATOL_HERMITIAN,
    off_tol: float = JACOBI_OFF_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> EigenDecomposition:
    """Diagonalize a complex Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian within ``atol``.
    atol : float
        Tolerated Hermiticity residual of the input.
    off_tol : float
        Convergence threshold on the Frobenius norm of the off-diagonal part.
    max_sweeps : int
        Sweep limit before :class:`ConvergenceError` is raised.

    The sweep order (p < q, row major), the rotation choice (|angle| <= pi/4),
    the eigenvector phase convention and the degenerate-eigenvalue tie-break
    (descending eigenvalue, then descending lexicographic eigenvector) are all
    fixed, so the output is deterministic for a given input.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"matrix must be square, got shape {h.shape}")
    if not (np.all(np.isfinite(h.real)) and np.all(np.isfinite(h.imag))):
        raise ValueError("matrix has non-finite entries")
    residual = hermiticity_residual(h)
    if residual > atol:
        raise ValueError(f"matrix is not Hermitian: residual {residual:.3e}")

    n = h.shape[0]
    a = (h + h.conj().T) / 2.0
    v = np.eye(n, dtype=complex)

    sweeps = 0
    while _off_norm(a) > off_tol:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                if abs(b) == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                absb = abs(b)
                ph = b / absb
                two_t = math.atan2(2.0 * absb, app - aqq)
                if two_t > math.pi / 2.0:
                    two_t -= math.pi
                t = 0.5 * two_t
                c = math.cos(t)
                s = math.sin(t)
                # a <- G† a G with G the (p,q) plane rotation
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p + s * np.conj(ph) * col_q
                a[:, q] = -s * ph * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p + s * ph * row_q
                a[q, :] = -s * np.conj(ph) * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                # accumulate eigenvectors: v <- v G
                vcol_p = v[:, p].copy()
                vcol_q = v[:, q].copy()
                v[:, p] = c * vcol_p + s * np.conj(ph) * vcol_q
                v[:, q] = -s * ph * vcol_p + c * vcol_q

    lam = np.diag(a).real.copy()

    # Phase convention: first component of modulus > PHASE_TOL real positive.
    for j in range(n):
        col = v[:, j]
        nz = np.flatnonzero(np.abs(col) > PHASE_TOL)
        if nz.size:
            z = col[nz[0]]
            v[:, j] = col * (np.conj(z) / abs(z))

    def _key(j: int) -> tuple:
        parts: list[float] = [-lam[j]]
        for entry in v[:, j]:
            parts.append(-entry.real)
            parts.append(-entry.imag)
        return tuple(parts)

    order = sorted(range(n), key=_key)
    lam = lam[order]
    v = v[:, order]
    return EigenDecomposition(eigenvalues=lam, diagonalizer=v.conj().T)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated quantum state: Hermitian, unit trace, positive semidefinite.

    ``subsystem_dims`` declares the tensor factorization, e.g. (2, 2) for two
    qubits; an empty tuple means a monopartite state of full dimension. The
    stored matrix is symmetrized to (m + m†)/2 after validation (exact for
    inputs that are Hermitian to machine precision), and the spectral
    decomposition computed during validation is kept on the instance.
    """

    matrix: np.ndarray
    subsystem_dims: tuple[int, ...] = ()
    atol: InitVar[float] = ATOL_HERMITIAN

    def __post_init__(self, atol: float) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
            raise ValueError("density matrix has non-finite entries")
        dims = tuple(int(d) for d in self.subsystem_dims)
        if any(d < 1 for d in dims):
            raise ValueError(f"subsystem dimensions must be positive: {dims}")
        if dims and math.prod(dims) != m.shape[0]:
            raise ValueError(
                f"subsystem dims {dims} do not multiply to dimension {m.shape[0]}"
            )

        residual = hermiticity_residual(m)
        if residual > atol:
            raise ValueError(f"density matrix is not Hermitian: residual {residual:.3e}")
        m = (m + m.conj().T) / 2.0

        trace_dev = abs(np.trace(m).real - 1.0) + abs(np.trace(m).imag)
        if trace_dev > atol:
            raise ValueError(f"density matrix trace deviates from 1 by {trace_dev:.3e}")

        eigen = eigendecompose(m, atol=atol)
        min_eig = float(eigen.eigenvalues.min())
        if min_eig < -atol:
            raise ValueError(
                f"density matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}"
            )

        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "subsystem_dims", dims)
        object.__setattr__(self, "_eigen", eigen)
        object.__setattr__(self, "validation_atol", float(atol))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigen(self) -> EigenDecomposition:
        """Spectral decomposition computed at validation time."""
        return self._eigen  # type: ignore[attr-defined]


def partial_trace(rho: DensityMatrix, keep: int) -> DensityMatrix:
    """Reduced state of one subsystem of a bipartite density matrix.

    ``keep`` is 1 for the first tensor factor, 2 for the second.
    """
    if len(rho.subsystem_dims) != 2:
        raise ValueError(
            f"partial trace needs a bipartite state, got subsystem dims {rho.subsystem_dims}"
        )
    if keep not in (1, 2):
        raise ValueError(f"keep must be 1 or 2, got {keep}")
    d1, d2 = rho.subsystem_dims
    r4 = rho.matrix.reshape(d1, d2, d1, d2)
    if keep == 1:
        reduced = np.einsum("jmkm->jk", r4)
        dims = (d1,)
    else:
        reduced = np.einsum("mjmk->jk", r4)
        dims = (d2,)
    return DensityMatrix(reduced, dims, atol=rho.validation_atol)  # type: ignore[attr-defined]
