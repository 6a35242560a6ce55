"""Seedable, portable generation of test states.

The generator is SplitMix64 (the reference 64-bit mixing sequence), with
uniforms taken from the top 53 bits and normals produced by the Box-Muller
transform. No global RNG state is involved anywhere, so every generated
object is a pure function of (parameters, seed) and reproduces bit for bit
across platforms.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import DensityMatrix
from .xstate import XStateParams

_MASK64 = (1 << 64) - 1

_BELL_VECTORS = {
    "phi_plus": np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2),
    "phi_minus": np.array([1, 0, 0, -1], dtype=complex) / math.sqrt(2),
    "psi_plus": np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2),
    "psi_minus": np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2),
}


class SplitMix64:
    """SplitMix64 stream: x += 0x9E3779B97F4A7C15, then two xor-multiply mixes."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64
        self._spare_normal: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        """Standard normal via Box-Muller; pairs are consumed cosine first."""
        if self._spare_normal is not None:
            z = self._spare_normal
            self._spare_normal = None
            return z
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        self._spare_normal = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)


def random_density_matrix(
    dim: int, seed: int, subsystem_dims: tuple[int, ...] | None = None
) -> DensityMatrix:
    """Hilbert-Schmidt-random state G G† / Tr(G G†) with Ginibre G.

    G's entries are filled row major, real part before imaginary part, from
    the seeded normal stream.
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    rng = SplitMix64(seed)
    g = np.empty((dim, dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            g[i, j] = complex(rng.normal(), rng.normal())
    m = g @ g.conj().T
    m /= np.trace(m).real
    dims = subsystem_dims if subsystem_dims is not None else ()
    return DensityMatrix(m, dims)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-random unitary: QR of a Ginibre matrix with the R phases fixed."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    rng = SplitMix64(seed)
    g = np.empty((dim, dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            g[i, j] = complex(rng.normal(), rng.normal())
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_xstate(seed: int) -> XStateParams:
    """X-state parameters with a uniform-simplex diagonal.

    Coherence moduli are uniform on the largest interval the block
    positivity conditions allow, phases uniform on [0, 2*pi), so the output
    always satisfies the XStateParams invariants.
    """
    rng = SplitMix64(seed)
    weights = [-math.log(1.0 - rng.uniform()) for _ in range(4)]
    total = sum(weights)
    d11, d22, d33, d44 = (w / total for w in weights)
    r14 = rng.uniform() * math.sqrt(d11 * d44)
    a14 = rng.uniform() * 2.0 * math.pi
    r23 = rng.uniform() * math.sqrt(d22 * d33)
    a23 = rng.uniform() * 2.0 * math.pi
    return XStateParams(
        rho11=d11,
        rho22=d22,
        rho33=d33,
        rho44=d44,
        rho14=r14 * complex(math.cos(a14), math.sin(a14)),
        rho23=r23 * complex(math.cos(a23), math.sin(a23)),
    )


def werner_state(p: float) -> DensityMatrix:
    """p |Φ+><Φ+| + (1-p) I/4, an X state interpolating mixed to entangled."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {p}")
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = (1.0 + p) / 4.0
    m[1, 1] = m[2, 2] = (1.0 - p) / 4.0
    m[0, 3] = m[3, 0] = p / 2.0
    return DensityMatrix(m, (2, 2))


def bell_state(which: str) -> DensityMatrix:
    """Maximally entangled projector; which is one of phi_plus, phi_minus, psi_plus, psi_minus."""
    try:
        psi = _BELL_VECTORS[which]
    except KeyError:
        raise ValueError(
            f"unknown Bell state {which!r}, expected one of {sorted(_BELL_VECTORS)}"
        ) from None
    return DensityMatrix(np.outer(psi, psi.conj()), (2, 2))
