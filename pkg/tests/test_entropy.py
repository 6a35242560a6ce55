import math

import numpy as np
import pytest

from tomodiscord import (
    DensityMatrix,
    bell_state,
    clamp_spectrum,
    diagonalizing_local_unitaries,
    kron,
    partial_trace,
    random_density_matrix,
    random_unitary,
    shannon_entropy,
    tomographic_mutual_information,
    unitary_tomogram,
    vn_mutual_information,
    von_neumann_entropy,
    werner_state,
)

# frozen by hand: -0.625*log2(0.625) - 3*0.125*log2(0.125)
WERNER_HALF_VN = 1.5487949406953987


def test_shannon_entropy_basics():
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
    assert shannon_entropy([1.0, 0.0, 0.0, 0.0]) == pytest.approx(0.0, abs=1e-15)
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-15)


def test_shannon_entropy_base_conversion():
    p = [0.1, 0.2, 0.3, 0.4]
    bits = shannon_entropy(p, 2.0)
    for base in (math.e, 3.0, 10.0):
        assert shannon_entropy(p, base) == pytest.approx(bits / math.log2(base), abs=1e-12)


def test_shannon_entropy_validation():
    with pytest.raises(ValueError):
        shannon_entropy([0.5, 0.5], base=1.0)
    with pytest.raises(ValueError):
        shannon_entropy([0.7, 0.2])  # sums to 0.9
    with pytest.raises(ValueError):
        shannon_entropy([1.1, -0.1])  # negative beyond the guard
    with pytest.raises(ValueError):
        shannon_entropy([])


def test_shannon_entropy_permutation_invariant():
    p = [0.4, 0.3, 0.2, 0.1]
    assert shannon_entropy(p) == pytest.approx(shannon_entropy(p[::-1]), abs=1e-15)


def test_clamp_spectrum():
    probs, clamped = clamp_spectrum([0.7, 0.3, -1e-12, 0.0])
    assert clamped
    assert probs.min() == 0.0
    assert probs.sum() == pytest.approx(1.0, abs=1e-15)
    probs, clamped = clamp_spectrum([0.5, 0.5])
    assert not clamped
    with pytest.raises(ValueError):
        clamp_spectrum([1.1, -0.1])


def test_von_neumann_entropy_values():
    assert von_neumann_entropy(DensityMatrix(np.eye(2) / 2)) == pytest.approx(1.0, abs=1e-12)
    assert von_neumann_entropy(bell_state("phi_plus")) == pytest.approx(0.0, abs=1e-10)
    assert von_neumann_entropy(werner_state(0.5)) == pytest.approx(WERNER_HALF_VN, abs=1e-10)


def test_vn_mutual_information_values():
    a = random_density_matrix(2, 1)
    b = random_density_matrix(2, 2)
    product = DensityMatrix(kron(a.matrix, b.matrix), (2, 2))
    assert vn_mutual_information(product) == pytest.approx(0.0, abs=1e-10)
    assert vn_mutual_information(bell_state("phi_plus")) == pytest.approx(2.0, abs=1e-10)
    assert vn_mutual_information(werner_state(0.5)) == pytest.approx(
        2.0 - WERNER_HALF_VN, abs=1e-10
    )


def test_vn_mutual_information_requires_bipartite():
    with pytest.raises(ValueError):
        vn_mutual_information(random_density_matrix(4, 0))


def test_tomographic_mutual_information_product_state():
    for seed in range(5):
        a = random_density_matrix(2, seed)
        b = random_density_matrix(2, seed + 10)
        product = DensityMatrix(kron(a.matrix, b.matrix), (2, 2))
        mi = tomographic_mutual_information(
            product, random_unitary(2, seed + 20), random_unitary(2, seed + 30)
        )
        assert abs(mi) < 1e-10


def test_tomographic_mutual_information_bell_identity():
    mi = tomographic_mutual_information(bell_state("phi_plus"), np.eye(2), np.eye(2))
    assert mi == pytest.approx(1.0, abs=1e-10)


def test_tomographic_mutual_information_nonnegative():
    for seed in range(30):
        rho = random_density_matrix(4, seed, (2, 2))
        mi = tomographic_mutual_information(
            rho, random_unitary(2, seed + 100), random_unitary(2, seed + 200)
        )
        assert mi >= -1e-10


def test_entropy_floor_random_unitaries():
    # the tomogram entropy is bounded below by the von Neumann entropy,
    # with equality in the eigenbasis
    for dim in (2, 4):
        dims = (2, 2) if dim == 4 else ()
        for seed in range(25):
            rho = random_density_matrix(dim, seed, dims)
            s = von_neumann_entropy(rho)
            h = shannon_entropy(
                unitary_tomogram(rho, random_unitary(dim, seed + 400)).probabilities
            )
            assert h - s >= -1e-10
            h_min = shannon_entropy(
                unitary_tomogram(rho, rho.eigen.eigenvectors).probabilities
            )
            assert abs(h_min - s) < 1e-10


def test_marginal_entropy_minimized_at_diagonalizers():
    from tomodiscord.tomography import marginals

    for seed in range(20):
        rho = random_density_matrix(4, seed, (2, 2))
        u1, u2 = diagonalizing_local_unitaries(rho)
        joint = unitary_tomogram(rho, kron(u1, u2))
        m1, m2 = marginals(joint)
        s1 = von_neumann_entropy(partial_trace(rho, 1))
        s2 = von_neumann_entropy(partial_trace(rho, 2))
        assert abs(shannon_entropy(m1.probabilities) - s1) < 1e-10
        assert abs(shannon_entropy(m2.probabilities) - s2) < 1e-10


def test_mutual_information_identity_at_diagonalizers():
    # at the diagonalizing local unitaries, Itomo reduces to S1 + S2 - H12
    for seed in range(20):
        rho = random_density_matrix(4, seed + 600, (2, 2))
        u1, u2 = diagonalizing_local_unitaries(rho)
        mi = tomographic_mutual_information(rho, u1, u2)
        s1 = von_neumann_entropy(partial_trace(rho, 1))
        s2 = von_neumann_entropy(partial_trace(rho, 2))
        h12 = shannon_entropy(unitary_tomogram(rho, kron(u1, u2)).probabilities)
        assert abs(mi - (s1 + s2 - h12)) < 1e-10
