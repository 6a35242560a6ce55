"""Shannon and von Neumann entropies and the two mutual informations.

A single configurable logarithm base (default 2, i.e. bits) is applied
uniformly to every entropy so that differences of entropies are meaningful.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import ATOL_PSD, DensityMatrix, kron, partial_trace, require_unitary
from .tomography import marginals, unitary_tomogram

PROB_SUM_TOL = 1e-6
PROB_NEG_TOL = 1e-10
ZERO_CUTOFF = 1e-15


def _require_base(base: float) -> float:
    base = float(base)
    if not base > 1.0:
        raise ValueError(f"log base must be > 1, got {base}")
    return base


def shannon_entropy(probabilities, base: float = 2.0) -> float:
    """-Σ p log p with 0·log 0 := 0; entries below 1e-15 count as exact zeros."""
    base = _require_base(base)
    p = np.asarray(probabilities, dtype=float).ravel()
    if p.size == 0:
        raise ValueError("empty probability vector")
    if p.min() < -PROB_NEG_TOL:
        raise ValueError(f"negative probability {p.min():.3e}")
    total = p.sum()
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise ValueError(f"probabilities sum to {total}, expected 1")
    p = np.clip(p, 0.0, None)
    nz = p[p > ZERO_CUTOFF]
    return float(-(nz * np.log(nz)).sum() / math.log(base))


def clamp_spectrum(eigenvalues, floor: float = ATOL_PSD) -> tuple[np.ndarray, bool]:
    """Clamp eigenvalues in [-floor, 0) to 0 and renormalize to unit sum.

    Returns the probability vector and a flag saying whether clamping
    happened. Eigenvalues below -floor raise.
    """
    lam = np.asarray(eigenvalues, dtype=float).ravel()
    if lam.min() < -floor:
        raise ValueError(f"spectrum has negative eigenvalue {lam.min():.3e}")
    clamped = bool((lam < 0.0).any())
    lam = np.clip(lam, 0.0, None)
    return lam / lam.sum(), clamped


def von_neumann_entropy(rho: DensityMatrix, base: float = 2.0) -> float:
    """Shannon entropy of the clamped, renormalized eigenvalue spectrum."""
    floor = getattr(rho, "validation_atol", ATOL_PSD)
    p, _ = clamp_spectrum(rho.eigen.eigenvalues, floor=floor)
    return shannon_entropy(p, base)


def vn_mutual_information(rho: DensityMatrix, base: float = 2.0) -> float:
    """S(rho_1) + S(rho_2) - S(rho) for a bipartite state."""
    if len(rho.subsystem_dims) != 2:
        raise ValueError(
            f"mutual information needs a bipartite state, got subsystem dims {rho.subsystem_dims}"
        )
    s1 = von_neumann_entropy(partial_trace(rho, 1), base)
    s2 = von_neumann_entropy(partial_trace(rho, 2), base)
    s12 = von_neumann_entropy(rho, base)
    return s1 + s2 - s12


def tomographic_mutual_information(
    rho: DensityMatrix, u1: np.ndarray, u2: np.ndarray, base: float = 2.0
) -> float:
    """H_1 + H_2 - H_12 of the joint tomogram measured at u1 ⊗ u2."""
    if len(rho.subsystem_dims) != 2:
        raise ValueError(
            f"mutual information needs a bipartite state, got subsystem dims {rho.subsystem_dims}"
        )
    d1, d2 = rho.subsystem_dims
    u1 = require_unitary(u1)
    u2 = require_unitary(u2)
    if u1.shape[0] != d1 or u2.shape[0] != d2:
        raise ValueError(
            f"local unitaries of dims ({u1.shape[0]}, {u2.shape[0]}) do not match "
            f"subsystems {rho.subsystem_dims}"
        )
    joint = unitary_tomogram(rho, kron(u1, u2))
    t1, t2 = marginals(joint)
    h1 = shannon_entropy(t1.probabilities, base)
    h2 = shannon_entropy(t2.probabilities, base)
    h12 = shannon_entropy(joint.probabilities, base)
    return h1 + h2 - h12
