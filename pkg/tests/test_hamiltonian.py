from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from motzkin_tn.contraction import contract_full
from motzkin_tn.hamiltonian import annihilation_residual, build_hamiltonian, kernel_dimension, pair_projector
from motzkin_tn.network import build_binary_height_pyramid, build_hrn_periodic, periodic_boundary
from motzkin_tn.walks import ground_state_vector, periodic_sector_state

TS = (Fraction(1, 2), 1, 2)


def test_two_site_open():
    H = build_hamiltonian(2, 1)
    assert H.dimension == 9
    dense = H.matrix.toarray()
    assert np.allclose(dense, dense.T)
    assert np.linalg.eigvalsh(dense).min() > -1e-12
    gs = np.zeros(9)
    gs[1 * 3 + 1] = gs[2 * 3 + 0] = 1 / np.sqrt(2)  # |0,0> and |1,-1>
    assert abs(gs @ dense @ gs) < 1e-14


@pytest.mark.parametrize("t", TS)
def test_projector_idempotent(t):
    p = pair_projector(t)
    assert np.allclose(p @ p, p, atol=1e-12)
    assert np.isclose(np.trace(p), 3)


@pytest.mark.parametrize("n2", [2, 4, 6])
@pytest.mark.parametrize("t", TS)
def test_ground_state_annihilated_termwise(n2, t):
    H = build_hamiltonian(n2, t)
    vec = ground_state_vector(n2, t).to_dense()
    for name, term in H.terms:
        assert np.linalg.norm(term @ vec) < 1e-12, name
    assert annihilation_residual(H, ground_state_vector(n2, t)) < 1e-12


def test_random_state_not_annihilated():
    H = build_hamiltonian(4, 1)
    rng = np.random.default_rng(0)
    assert annihilation_residual(H, rng.normal(size=81)) > 1e-3


@pytest.mark.parametrize("n2", [2, 4])
def test_periodic_sector_states(n2):
    H = build_hamiltonian(n2, 1, "periodic")
    for k in range(-n2, n2 + 1):
        assert annihilation_residual(H, periodic_sector_state(n2, k)) < 1e-12
        net_state = contract_full(build_hrn_periodic(n2, *periodic_boundary(n2, k)))
        assert annihilation_residual(H, net_state) < 1e-12


def test_kernel_dimensions():
    assert kernel_dimension(build_hamiltonian(4, 1)) == 1
    assert kernel_dimension(build_hamiltonian(2, 2)) == 1
    assert kernel_dimension(build_hamiltonian(2, 1, "periodic")) == 5
    assert kernel_dimension(build_hamiltonian(4, 1, "periodic")) == 9


@pytest.mark.parametrize("n2,t", [(4, 2), (6, Fraction(1, 2))])
def test_positive_semidefinite(n2, t):
    H = build_hamiltonian(n2, t)
    mags = H.magnetization()
    for m in np.unique(mags):
        sel = np.flatnonzero(mags == m)
        assert np.linalg.eigvalsh(H.matrix[sel][:, sel].toarray()).min() > -1e-12


def test_periodic_block_diagonal():
    H = build_hamiltonian(4, 1, "periodic")
    mags = H.magnetization()
    for (r, c) in H.entries():
        assert mags[r] == mags[c]


def test_errors():
    with pytest.raises(ValueError):
        build_hamiltonian(12, 1)
    with pytest.raises(ValueError):
        build_hamiltonian(3, 1)
    H = build_hamiltonian(2, 1)
    with pytest.raises(ValueError):
        annihilation_residual(H, ground_state_vector(4, 1))
    with pytest.raises(ValueError):
        annihilation_residual(H, np.ones(5))


def test_network_state_used_directly():
    H = build_hamiltonian(6, 2)
    assert annihilation_residual(H, contract_full(build_binary_height_pyramid(3, 2))) < 1e-12
