"""Tomographic discord of two-qubit states.

The discord is the gap between the von Neumann mutual information and the
tomographic (Shannon) mutual information evaluated at the local unitaries
that diagonalize the two marginal states; equivalently it is the joint
tomogram entropy at those unitaries minus the von Neumann entropy of the
full state. A separately reported variant minimizes the joint tomogram
entropy over all products of local measurement bases, parametrized by two
Bloch-sphere directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .entropy import ZERO_CUTOFF, clamp_spectrum, shannon_entropy, _require_base
from .linalg import ATOL_PSD, DensityMatrix, kron, partial_trace
from .tomography import _rotation_matrix, marginals, unitary_tomogram
from .xstate import XStateParams, is_x_matrix, xstate_eigenvalues

CONSISTENCY_TOL = 1e-10
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class OptimizedDiscord:
    """Result of minimizing the joint tomogram entropy over local bases."""

    discord_opt: float
    argmin_angles: tuple[float, float, float, float]
    evaluations: int


@dataclass(frozen=True)
class DiscordReport:
    """All entropies and both mutual informations behind a discord value.

    h1, h2 and h12 are tomogram entropies at the marginal-diagonalizing local
    unitaries. ``clamped_eigenvalues`` records whether any spectrum needed
    its float-noise negatives clamped; ``degenerate_marginal`` flags non-X
    states whose marginal spectrum is degenerate, where the choice of
    diagonalizer is not unique.
    """

    base: float
    s1: float
    s2: float
    s12: float
    h1: float
    h2: float
    h12: float
    vn_mutual: float
    tomo_mutual: float
    discord: float
    clamped_eigenvalues: bool
    degenerate_marginal: bool
    optimized: OptimizedDiscord | None = None

    def as_dict(self) -> dict:
        """Plain-values mapping with stable key names (used by the CLI)."""
        out = {
            "base": self.base,
            "s1": self.s1,
            "s2": self.s2,
            "s12": self.s12,
            "h1": self.h1,
            "h2": self.h2,
            "h12": self.h12,
            "vn_mutual": self.vn_mutual,
            "tomo_mutual": self.tomo_mutual,
            "discord": self.discord,
            "clamped_eigenvalues": self.clamped_eigenvalues,
            "degenerate_marginal": self.degenerate_marginal,
            "optimized": None,
        }
        if self.optimized is not None:
            out["optimized"] = {
                "discord_opt": self.optimized.discord_opt,
                "argmin_angles": list(self.optimized.argmin_angles),
                "evaluations": self.optimized.evaluations,
            }
        return out


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the local-unitary entropy minimization.

    ``grid_size`` is the number of points per angle axis on each Bloch
    sphere, so the coarse stage scans grid_size^2 bases per subsystem.
    ``top_k`` grid candidates plus the marginal diagonalizers plus
    ``restarts`` seeded random starts are refined with a Nelder-Mead simplex;
    ``max_evaluations`` caps the refinement-stage objective evaluations.
    """

    grid_size: int = 16
    top_k: int = 4
    restarts: int = 0
    tolerance: float = 1e-9
    max_evaluations: int = 20000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.grid_size < 1:
            raise ValueError(f"grid_size must be >= 1, got {self.grid_size}")
        if self.top_k < 0 or self.restarts < 0:
            raise ValueError("top_k and restarts must be nonnegative")
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_evaluations < 1:
            raise ValueError(f"max_evaluations must be >= 1, got {self.max_evaluations}")


def _require_two_qubit(rho: DensityMatrix) -> None:
    if rho.subsystem_dims != (2, 2):
        raise ValueError(
            f"discord is defined for two-qubit states with subsystem dims (2, 2), "
            f"got {rho.subsystem_dims}"
        )


def diagonalizing_local_unitaries(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Local unitaries whose tomogram marginals are the marginal spectra.

    Each returned matrix has the eigenvectors of the corresponding partial
    trace as columns (descending eigenvalue order, phase-fixed), so measuring
    in these bases makes each marginal distribution equal its spectrum.
    """
    _require_two_qubit(rho)
    u1 = partial_trace(rho, 1).eigen.eigenvectors
    u2 = partial_trace(rho, 2).eigen.eigenvectors
    return u1, u2


def tomographic_discord(rho: DensityMatrix, base: float = 2.0) -> DiscordReport:
    """Full discord report at the marginal-diagonalizing local unitaries.

    The discord is computed both as I - Itomo and as h12 - s12; the two
    routes must agree within 1e-10 or the computation aborts.
    """
    _require_two_qubit(rho)
    base = _require_base(base)
    floor = getattr(rho, "validation_atol", ATOL_PSD)

    p12, clamped12 = clamp_spectrum(rho.eigen.eigenvalues, floor=floor)
    s12 = shannon_entropy(p12, base)

    rho1 = partial_trace(rho, 1)
    rho2 = partial_trace(rho, 2)
    p1, clamped1 = clamp_spectrum(rho1.eigen.eigenvalues, floor=floor)
    p2, clamped2 = clamp_spectrum(rho2.eigen.eigenvalues, floor=floor)
    s1 = shannon_entropy(p1, base)
    s2 = shannon_entropy(p2, base)

    u1 = rho1.eigen.eigenvectors
    u2 = rho2.eigen.eigenvectors
    joint = unitary_tomogram(rho, kron(u1, u2))
    t1, t2 = marginals(joint)
    h1 = shannon_entropy(t1.probabilities, base)
    h2 = shannon_entropy(t2.probabilities, base)
    h12 = shannon_entropy(joint.probabilities, base)

    vn_mutual = s1 + s2 - s12
    tomo_mutual = h1 + h2 - h12
    discord = h12 - s12
    if abs((vn_mutual - tomo_mutual) - discord) > CONSISTENCY_TOL:
        raise RuntimeError(
            "internal consistency failure: I - Itomo = "
            f"{vn_mutual - tomo_mutual} but h12 - s12 = {discord}"
        )

    gap1 = float(rho1.eigen.eigenvalues[0] - rho1.eigen.eigenvalues[-1])
    gap2 = float(rho2.eigen.eigenvalues[0] - rho2.eigen.eigenvalues[-1])
    degenerate = (min(gap1, gap2) < DEGENERACY_TOL) and not is_x_matrix(rho.matrix)

    return DiscordReport(
        base=base,
        s1=s1,
        s2=s2,
        s12=s12,
        h1=h1,
        h2=h2,
        h12=h12,
        vn_mutual=vn_mutual,
        tomo_mutual=tomo_mutual,
        discord=discord,
        clamped_eigenvalues=clamped12 or clamped1 or clamped2,
        degenerate_marginal=degenerate,
    )


def xstate_discord(x: XStateParams, base: float = 2.0) -> DiscordReport:
    """Closed-form discord report for an X state.

    The marginals are diagonal, so the joint tomogram at the diagonalizing
    unitaries is just the diagonal of the density matrix and the discord
    reduces to -Σ rho_kk log rho_kk + Σ lambda_k log lambda_k with the
    closed-form block eigenvalues.
    """
    base = _require_base(base)
    lam = xstate_eigenvalues(x)
    spectrum, clamped = clamp_spectrum(lam)
    s12 = shannon_entropy(spectrum, base)

    diag = np.clip(x.diagonal, 0.0, None)
    h12 = shannon_entropy(diag, base)
    s1 = shannon_entropy(np.clip([x.rho11 + x.rho22, x.rho33 + x.rho44], 0.0, None), base)
    s2 = shannon_entropy(np.clip([x.rho11 + x.rho33, x.rho22 + x.rho44], 0.0, None), base)

    return DiscordReport(
        base=base,
        s1=s1,
        s2=s2,
        s12=s12,
        h1=s1,
        h2=s2,
        h12=h12,
        vn_mutual=s1 + s2 - s12,
        tomo_mutual=s1 + s2 - h12,
        discord=h12 - s12,
        clamped_eigenvalues=clamped,
        degenerate_marginal=False,
    )


def _joint_entropy(rho_mat: np.ndarray, angles: np.ndarray, log_base: float) -> float:
    """Joint tomogram entropy at the product basis given by four angles."""
    u = np.kron(
        _rotation_matrix(angles[0], angles[1]), _rotation_matrix(angles[2], angles[3])
    )
    p = np.einsum("ij,ik,kj->j", u.conj(), rho_mat, u).real
    p = np.clip(p, 0.0, None)
    safe = np.where(p > ZERO_CUTOFF, p, 1.0)
    return float(-(p * np.log(safe)).sum() / log_base)


def _grid_entropies(
    rho_mat: np.ndarray, thetas: np.ndarray, phis: np.ndarray, log_base: float, block: int = 256
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Joint entropies on the full (sphere x sphere) angle grid.

    Returns (entropies[a, b], theta_flat, phi_flat) where a and b index the
    flattened per-sphere grids. Evaluation is blocked to bound memory.
    """
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    t_flat = tt.ravel()
    p_flat = pp.ravel()
    c = np.cos(t_flat / 2.0)
    s = np.sin(t_flat / 2.0)
    e = np.exp(1j * p_flat)
    n = t_flat.size
    u = np.empty((n, 2, 2), dtype=complex)
    u[:, 0, 0] = c
    u[:, 0, 1] = -s * np.conj(e)
    u[:, 1, 0] = s * e
    u[:, 1, 1] = c

    rho4 = rho_mat.reshape(2, 2, 2, 2)
    half = np.einsum("ajm,jJkK,akm->amJK", u.conj(), rho4, u)
    entropies = np.empty((n, n))
    for start in range(0, n, block):
        sl = slice(start, min(start + block, n))
        w = np.einsum("amJK,bJn,bKn->abmn", half[sl], u.conj(), u).real
        w = np.clip(w, 0.0, None)
        safe = np.where(w > ZERO_CUTOFF, w, 1.0)
        entropies[sl] = -(w * np.log(safe)).sum(axis=(2, 3)) / log_base
    return entropies, t_flat, p_flat


def _bloch_angles(u: np.ndarray) -> tuple[float, float]:
    """Angles (theta, phi) whose rotation unitary measures the same basis as u."""
    v = u[:, 0]
    if abs(v[0]) > 1e-12:
        v = v * (np.conj(v[0]) / abs(v[0]))
        theta = 2.0 * math.atan2(abs(v[1]), v[0].real)
        phi = math.atan2(v[1].imag, v[1].real) % (2.0 * math.pi) if abs(v[1]) > 1e-12 else 0.0
    else:
        theta = math.pi
        phi = 0.0
    return theta, phi


def _canonical_angles(angles: np.ndarray) -> tuple[float, float, float, float]:
    """Map raw optimizer angles onto [0, pi] x [0, 2*pi) per sphere."""
    out: list[float] = []
    for k in (0, 2):
        theta, phi = angles[k], angles[k + 1]
        nx = math.sin(theta) * math.cos(phi)
        ny = math.sin(theta) * math.sin(phi)
        nz = math.cos(theta)
        out.append(math.atan2(math.hypot(nx, ny), nz))
        out.append(math.atan2(ny, nx) % (2.0 * math.pi))
    return tuple(out)  # type: ignore[return-value]


class _BudgetExhausted(Exception):
    pass


class _CountedObjective:
    """Wrap the objective with an evaluation budget and a global best tracker."""

    def __init__(self, fn, limit: int):
        self.fn = fn
        self.limit = limit
        self.count = 0
        self.best_f = math.inf
        self.best_x: np.ndarray | None = None

    def __call__(self, x: np.ndarray) -> float:
        if self.count >= self.limit:
            raise _BudgetExhausted
        self.count += 1
        f = self.fn(x)
        if f < self.best_f:
            self.best_f = f
            self.best_x = np.array(x, dtype=float)
        return f

    def record(self, x: np.ndarray, f: float) -> None:
        if f < self.best_f:
            self.best_f = f
            self.best_x = np.array(x, dtype=float)


def _nelder_mead(fn: _CountedObjective, x0: np.ndarray, ftol: float, max_iter: int = 400) -> None:
    """Minimize fn from x0 with a plain Nelder-Mead simplex.

    Progress is recorded inside fn (best point so far), so nothing needs to
    be returned; the budget inside fn ends the search via _BudgetExhausted.
    """
    alpha, gamma, beta, delta = 1.0, 2.0, 0.5, 0.5
    step = 0.35
    dim = x0.size
    simplex = [np.array(x0, dtype=float)]
    for i in range(dim):
        vertex = np.array(x0, dtype=float)
        vertex[i] += step
        simplex.append(vertex)
    try:
        values = [fn(x) for x in simplex]
        for _ in range(max_iter):
            order = sorted(range(len(simplex)), key=lambda i: values[i])
            simplex = [simplex[i] for i in order]
            values = [values[i] for i in order]
            if values[-1] - values[0] < ftol:
                break
            centroid = np.mean(simplex[:-1], axis=0)
            reflected = centroid + alpha * (centroid - simplex[-1])
            f_r = fn(reflected)
            if f_r < values[0]:
                expanded = centroid + gamma * (reflected - centroid)
                f_e = fn(expanded)
                if f_e < f_r:
                    simplex[-1], values[-1] = expanded, f_e
                else:
                    simplex[-1], values[-1] = reflected, f_r
            elif f_r < values[-2]:
                simplex[-1], values[-1] = reflected, f_r
            else:
                contracted = centroid + beta * (simplex[-1] - centroid)
                f_c = fn(contracted)
                if f_c < values[-1]:
                    simplex[-1], values[-1] = contracted, f_c
                else:
                    best = simplex[0]
                    simplex = [best] + [best + delta * (v - best) for v in simplex[1:]]
                    values = [values[0]] + [fn(v) for v in simplex[1:]]
    except _BudgetExhausted:
        return


def optimized_discord(
    rho: DensityMatrix, base: float = 2.0, config: OptimizerConfig | None = None
) -> DiscordReport:
    """Discord report extended with the minimum over local measurement bases.

    The joint tomogram entropy h12(u1 ⊗ u2) is minimized over two Bloch
    directions per subsystem (diagonal phases of the local unitaries provably
    leave tomograms unchanged, so two angles per side span all reachable
    distributions). A coarse grid scan is refined by Nelder-Mead runs started
    from the best grid points, from the marginal diagonalizers, and from
    optional seeded random restarts. Deterministic for fixed config.
    """
    if config is None:
        config = OptimizerConfig()
    report = tomographic_discord(rho, base)
    log_base = math.log(report.base)
    g = config.grid_size
    thetas = np.linspace(0.0, math.pi, g)
    phis = np.linspace(0.0, 2.0 * math.pi, g, endpoint=False)

    entropies, t_flat, p_flat = _grid_entropies(rho.matrix, thetas, phis, log_base)
    n = t_flat.size
    grid_evals = n * n

    flat_order = np.argsort(entropies, axis=None, kind="stable")
    starts: list[np.ndarray] = []
    u1, u2 = diagonalizing_local_unitaries(rho)
    t1, f1 = _bloch_angles(u1)
    t2, f2 = _bloch_angles(u2)
    starts.append(np.array([t1, f1, t2, f2]))
    for idx in flat_order[: config.top_k]:
        a, b = divmod(int(idx), n)
        starts.append(np.array([t_flat[a], p_flat[a], t_flat[b], p_flat[b]]))
    if config.restarts:
        from .ensembles import SplitMix64

        rng = SplitMix64(config.seed)
        for _ in range(config.restarts):
            starts.append(
                np.array(
                    [
                        rng.uniform() * math.pi,
                        rng.uniform() * 2.0 * math.pi,
                        rng.uniform() * math.pi,
                        rng.uniform() * 2.0 * math.pi,
                    ]
                )
            )

    counted = _CountedObjective(
        lambda x: _joint_entropy(rho.matrix, x, log_base), config.max_evaluations
    )
    best_grid = int(flat_order[0])
    a, b = divmod(best_grid, n)
    counted.record(
        np.array([t_flat[a], p_flat[a], t_flat[b], p_flat[b]]),
        float(entropies.flat[best_grid]),
    )
    for x0 in starts:
        if counted.count >= config.max_evaluations:
            break
        _nelder_mead(counted, x0, ftol=config.tolerance)

    assert counted.best_x is not None
    optimized = OptimizedDiscord(
        discord_opt=counted.best_f - report.s12,
        argmin_angles=_canonical_angles(counted.best_x),
        evaluations=grid_evals + counted.count,
    )
    return replace(report, optimized=optimized)
