"""Spin tomograms of one- and two-qubit states.

A tomogram is the probability vector over spin-projection outcomes obtained
by measuring in the basis given by the columns of a unitary u, i.e. the
diagonal of u†ρu. Outcomes are ordered with the projection m = +1/2 first;
for two qubits the joint outcomes are lexicographic with the first subsystem
as the major index.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DensityMatrix,
    EigenDecomposition,
    kron,
    require_unitary,
)

PROB_TOL = 1e-10
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class Direction:
    """Measurement axis on the Bloch sphere, polar theta in [0, pi], azimuth phi in [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")

    @property
    def unit_vector(self) -> np.ndarray:
        """Cartesian unit vector (sin t cos p, sin t sin p, cos t)."""
        return np.array(
            [
                math.sin(self.theta) * math.cos(self.phi),
                math.sin(self.theta) * math.sin(self.phi),
                math.cos(self.theta),
            ]
        )


@dataclass(frozen=True, eq=False)
class Tomogram:
    """Probability vector over joint spin-projection outcomes.

    Entries are validated to be within 1e-10 of [0, 1] and to sum to 1 within
    1e-10, then stored clamped to [0, 1]. ``source_unitary`` is the
    measurement unitary that produced the distribution.
    """

    probabilities: np.ndarray
    outcome_dims: tuple[int, ...]
    source_unitary: np.ndarray

    def __post_init__(self) -> None:
        p = np.array(self.probabilities, dtype=float).ravel()
        dims = tuple(int(d) for d in self.outcome_dims)
        if math.prod(dims) != p.size:
            raise ValueError(f"outcome dims {dims} do not match {p.size} probabilities")
        if p.min() < -PROB_TOL or p.max() > 1.0 + PROB_TOL:
            raise ValueError(f"probabilities out of range: [{p.min()}, {p.max()}]")
        total = p.sum()
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {total}, expected 1")
        p = np.clip(p, 0.0, 1.0)
        u = np.array(self.source_unitary, dtype=complex)
        p.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "outcome_dims", dims)
        object.__setattr__(self, "source_unitary", u)


def unitary_tomogram(rho: DensityMatrix, u: np.ndarray) -> Tomogram:
    """Tomogram of rho in the basis of u: the diagonal of u†ρu.

    Residual imaginary parts of the diagonal above 1e-10 raise instead of
    being silently discarded.
    """
    u = require_unitary(u)
    if u.shape[0] != rho.dim:
        raise ValueError(f"unitary dimension {u.shape[0]} does not match state dimension {rho.dim}")
    diag = np.einsum("ij,ik,kj->j", u.conj(), rho.matrix, u)
    imag = float(np.max(np.abs(diag.imag)))
    if imag > IMAG_TOL:
        raise ValueError(f"tomogram diagonal has imaginary residue {imag:.3e}")
    dims = rho.subsystem_dims if rho.subsystem_dims else (rho.dim,)
    return Tomogram(diag.real, dims, u)


def _rotation_matrix(theta: float, phi: float) -> np.ndarray:
    """2x2 basis-change unitary whose columns are the +/-n spin eigenstates."""
    half = 0.5 * theta
    c = math.cos(half)
    s = math.sin(half)
    e = cmath.exp(1j * phi)
    return np.array([[c, -s * e.conjugate()], [s * e, c]], dtype=complex)


def rotation_unitary(n: Direction) -> np.ndarray:
    """Measurement unitary for the spin projection onto direction n.

    The first column is the +1/2 eigenstate of n·σ, so the tomogram of any
    qubit state satisfies p(+1/2) = (1 + n·<σ>)/2 and p(-1/2) = (1 - n·<σ>)/2.
    """
    return _rotation_matrix(n.theta, n.phi)


def spin_tomogram(rho: DensityMatrix, n: Direction) -> Tomogram:
    """Probabilities of spin projection +1/2 and -1/2 along n for a qubit."""
    if rho.dim != 2:
        raise ValueError(f"spin tomogram requires a single qubit, got dimension {rho.dim}")
    return unitary_tomogram(rho, rotation_unitary(n))


def bipartite_spin_tomogram(rho: DensityMatrix, n1: Direction, n2: Direction) -> Tomogram:
    """Joint distribution of the two spin projections along n1 and n2."""
    if rho.subsystem_dims != (2, 2):
        raise ValueError(
            f"bipartite spin tomogram requires subsystem dims (2, 2), got {rho.subsystem_dims}"
        )
    return unitary_tomogram(rho, kron(rotation_unitary(n1), rotation_unitary(n2)))


def marginals(t: Tomogram) -> tuple[Tomogram, Tomogram]:
    """Single-subsystem marginals of a bipartite tomogram (sum over the other index)."""
    if len(t.outcome_dims) != 2:
        raise ValueError(f"marginals require two outcome dimensions, got {t.outcome_dims}")
    d1, d2 = t.outcome_dims
    joint = t.probabilities.reshape(d1, d2)
    first = Tomogram(joint.sum(axis=1), (d1,), t.source_unitary)
    second = Tomogram(joint.sum(axis=0), (d2,), t.source_unitary)
    return first, second


def tomogram_via_eigen(decomp: EigenDecomposition, u: np.ndarray) -> Tomogram:
    """Tomogram from a spectral decomposition: ω_m = Σ_k λ_k |(u0 u)_{km}|².

    Equals ``unitary_tomogram`` of the reconstructed state for every unitary u.
    """
    u = require_unitary(u)
    if u.shape[0] != decomp.diagonalizer.shape[0]:
        raise ValueError(
            f"unitary dimension {u.shape[0]} does not match decomposition "
            f"dimension {decomp.diagonalizer.shape[0]}"
        )
    weights = np.abs(decomp.diagonalizer @ u) ** 2
    p = decomp.eigenvalues @ weights
    return Tomogram(p, (u.shape[0],), u)
