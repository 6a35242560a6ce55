import math

import numpy as np
import pytest

from tomodiscord import (
    DensityMatrix,
    SplitMix64,
    bell_state,
    eigendecompose,
    params_from_matrix,
    random_density_matrix,
    random_unitary,
    random_xstate,
    tomographic_discord,
    von_neumann_entropy,
    werner_state,
    xstate_discord,
    xstate_eigenvalues,
)


def test_splitmix64_reference_vectors():
    # first outputs of the reference SplitMix64 sequence for seed 0
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4
    assert rng.next_u64() == 0x06C45D188009454F


def test_splitmix64_uniform_range():
    rng = SplitMix64(99)
    values = [rng.uniform() for _ in range(1000)]
    assert all(0.0 <= v < 1.0 for v in values)
    assert 0.4 < sum(values) / len(values) < 0.6


def test_splitmix64_normal_moments():
    rng = SplitMix64(7)
    values = np.array([rng.normal() for _ in range(20000)])
    assert abs(values.mean()) < 0.02
    assert abs(values.std() - 1.0) < 0.02


def test_box_muller_pairing():
    # the first normal pair follows directly from the first two uniforms
    rng = SplitMix64(42)
    v1, v2 = rng.uniform(), rng.uniform()
    r = math.sqrt(-2.0 * math.log(1.0 - v1))
    rng2 = SplitMix64(42)
    assert rng2.normal() == r * math.cos(2.0 * math.pi * v2)
    assert rng2.normal() == r * math.sin(2.0 * math.pi * v2)


def test_random_density_matrix_dim_one():
    rho = random_density_matrix(1, 5)
    assert np.allclose(rho.matrix, [[1.0]])


def test_random_density_matrix_contract():
    rho = random_density_matrix(4, 42, (2, 2))
    # revalidate at a tight tolerance
    DensityMatrix(rho.matrix, rho.subsystem_dims, atol=1e-12)
    assert rho.subsystem_dims == (2, 2)


def test_random_density_matrix_deterministic():
    a = random_density_matrix(4, 7, (2, 2))
    b = random_density_matrix(4, 7, (2, 2))
    assert np.array_equal(a.matrix, b.matrix)
    c = random_density_matrix(4, 8, (2, 2))
    assert not np.array_equal(a.matrix, c.matrix)


def test_random_density_matrix_rejects_dim_zero():
    with pytest.raises(ValueError):
        random_density_matrix(0, 1)


def test_random_density_matrix_mean_near_maximally_mixed():
    # unitary invariance of the construction pushes the ensemble mean to I/2
    total = np.zeros((2, 2), dtype=complex)
    n = 10000
    for seed in range(n):
        total += random_density_matrix(2, seed).matrix
    assert np.max(np.abs(total / n - np.eye(2) / 2)) < 0.02


def test_random_xstate_contract():
    for seed in range(20):
        x = random_xstate(seed)
        assert abs(x.rho11 + x.rho22 + x.rho33 + x.rho44 - 1.0) < 1e-12
        assert abs(x.rho14) ** 2 <= x.rho11 * x.rho44 + 1e-15
        assert abs(x.rho23) ** 2 <= x.rho22 * x.rho33 + 1e-15


def test_random_xstate_deterministic():
    assert random_xstate(3) == random_xstate(3)
    assert random_xstate(3) != random_xstate(4)


def test_random_xstate_spectrum_matches_closed_form():
    for seed in range(20):
        x = random_xstate(seed + 500)
        numeric = eigendecompose(x.to_matrix()).eigenvalues
        closed = np.sort(xstate_eigenvalues(x))[::-1]
        assert np.max(np.abs(numeric - closed)) < 1e-10


def test_werner_endpoints():
    assert np.allclose(werner_state(0.0).matrix, np.eye(4) / 4)
    assert np.allclose(werner_state(1.0).matrix, bell_state("phi_plus").matrix)


def test_werner_half_spectrum():
    lam = werner_state(0.5).eigen.eigenvalues
    assert np.allclose(lam, [0.625, 0.125, 0.125, 0.125], atol=1e-12)


def test_werner_rejects_out_of_range():
    with pytest.raises(ValueError):
        werner_state(-0.1)
    with pytest.raises(ValueError):
        werner_state(1.1)


def test_bell_states():
    phi_plus = bell_state("phi_plus")
    assert phi_plus.matrix[0, 3] == pytest.approx(0.5)
    psi_minus = bell_state("psi_minus")
    assert psi_minus.matrix[1, 1] == pytest.approx(0.5)
    assert psi_minus.matrix[1, 2] == pytest.approx(-0.5)
    for which in ("phi_plus", "phi_minus", "psi_plus", "psi_minus"):
        rho = bell_state(which)
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-10)
        assert tomographic_discord(rho).discord == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        bell_state("sigma_plus")


def test_werner_discord_monotone():
    previous = -1.0
    for p in np.linspace(0.0, 1.0, 101):
        d = xstate_discord(params_from_matrix(werner_state(float(p)).matrix)).discord
        assert d >= previous - 1e-12
        previous = d


def test_random_unitary_contract():
    for dim in (2, 4):
        u = random_unitary(dim, 11)
        assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) < 1e-12
    assert np.array_equal(random_unitary(4, 3), random_unitary(4, 3))
    with pytest.raises(ValueError):
        random_unitary(0, 1)
