"""Frustration-free spin-1 Hamiltonian of the area-deformed Motzkin chain.

Basis: product states over ``(-1, 0, 1)`` per site, first site most
significant (the same layout as :meth:`StateVector.to_dense`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .walks import MOTZKIN_STEPS, StateVector

__all__ = [
    "SparseHamiltonian",
    "build_hamiltonian",
    "pair_projector",
    "annihilation_residual",
    "kernel_dimension",
    "MAX_SITES",
    "MAX_EIGEN_SITES",
]

MAX_SITES = 10
MAX_EIGEN_SITES = 8
_D = 3
_POS = {lab: i for i, lab in enumerate(MOTZKIN_STEPS)}


@dataclass
class SparseHamiltonian:
    matrix: sp.csr_matrix
    n_sites: int
    t: float
    boundary: str
    terms: list[tuple[str, sp.csr_matrix]] = field(default_factory=list, repr=False)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def entries(self) -> dict[tuple[int, int], float]:
        coo = self.matrix.tocoo()
        return {(int(r), int(c)): float(v) for r, c, v in zip(coo.row, coo.col, coo.data)}

    def magnetization(self) -> np.ndarray:
        """Total ``S_z`` of every basis state."""
        m = np.zeros(1, dtype=int)
        for _ in range(self.n_sites):
            m = (m[:, None] + np.array(MOTZKIN_STEPS)[None, :]).ravel()
        return m


def _pair_vec(a: int, b: int) -> np.ndarray:
    v = np.zeros(_D * _D)
    v[_POS[a] * _D + _POS[b]] = 1.0
    return v


def pair_projector(t: float) -> np.ndarray:
    """9x9 projector onto span of the normalised Φ_t, Ψ_t, Θ_t."""
    t = float(t)
    proj = np.zeros((9, 9))
    for (a, b), (c, d) in (((1, 0), (0, 1)), ((0, -1), (-1, 0)), ((1, -1), (0, 0))):
        v = _pair_vec(a, b) - t * _pair_vec(c, d)
        v /= np.linalg.norm(v)
        proj += np.outer(v, v)
    return proj


def _embed(local: np.ndarray, sites: list[int], n: int) -> sp.csr_matrix:
    """Operator acting as ``local`` on ``sites`` (in order) and identity elsewhere."""
    k = len(sites)
    dim = _D**n
    local = sp.coo_matrix(local)
    rows, cols, vals = [], [], []
    strides = [_D ** (n - 1 - s) for s in sites]
    # every basis index splits into the digits on `sites` and the rest
    idx = np.arange(dim)
    digits = [(idx // st) % _D for st in strides]
    local_idx = np.zeros(dim, dtype=int)
    for d in digits:
        local_idx = local_idx * _D + d
    base = idx - sum(d * st for d, st in zip(digits, strides))
    by_local = {}
    for r, c, v in zip(local.row, local.col, local.data):
        by_local.setdefault(c, []).append((r, v))
    for c, outs in by_local.items():
        src = idx[local_idx == c]
        b = base[local_idx == c]
        for r, v in outs:
            rd = [(r // _D ** (k - 1 - i)) % _D for i in range(k)]
            dst = b + sum(d * st for d, st in zip(rd, strides))
            rows.append(dst)
            cols.append(src)
            vals.append(np.full(len(src), v))
    if not rows:
        return sp.csr_matrix((dim, dim))
    return sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim))


def build_hamiltonian(n_sites: int, t=1, boundary: str = "open") -> SparseHamiltonian:
    """``H = Π_boundary + Σ_j Π_j`` (open) or ``Σ_j Π_j`` including the wrap-around pair (periodic)."""
    if n_sites < 2 or n_sites % 2:
        raise ValueError("n_sites must be even and at least 2")
    if n_sites > MAX_SITES:
        raise ValueError(f"n_sites={n_sites} exceeds the cap {MAX_SITES}")
    if boundary not in ("open", "periodic"):
        raise ValueError(f"unknown boundary {boundary!r}")
    t = float(Fraction(t)) if not isinstance(t, float) else t
    if t <= 0:
        raise ValueError("t must be positive")
    proj = pair_projector(t)
    terms = []
    for j in range(n_sites - 1):
        terms.append((f"Pi_{j + 1}", _embed(proj, [j, j + 1], n_sites)))
    if boundary == "periodic":
        terms.append((f"Pi_{n_sites}", _embed(proj, [n_sites - 1, 0], n_sites)))
    else:
        down = np.zeros((3, 3))
        down[_POS[-1], _POS[-1]] = 1.0
        up = np.zeros((3, 3))
        up[_POS[1], _POS[1]] = 1.0
        terms.append(("boundary_left", _embed(down, [0], n_sites)))
        terms.append(("boundary_right", _embed(up, [n_sites - 1], n_sites)))
    mat = sum((m for _, m in terms), sp.csr_matrix((_D**n_sites, _D**n_sites)))
    return SparseHamiltonian(sp.csr_matrix(mat), n_sites, t, boundary, terms)


def _dense(state, n: int) -> np.ndarray:
    if isinstance(state, StateVector):
        if state.kind != "motzkin":
            raise ValueError("Hamiltonian acts on spin-1 states")
        if state.n_sites != n:
            raise ValueError(f"state has {state.n_sites} sites, Hamiltonian has {n}")
        if state.scalar_kind == "poly_t":
            raise ValueError("evaluate the state at a numeric t first")
        return state.to_dense()
    vec = np.asarray(state, dtype=float)
    if vec.shape != (_D**n,):
        raise ValueError("dimension mismatch")
    return vec


def annihilation_residual(H: SparseHamiltonian, state) -> float:
    """``‖H ψ‖ / ‖ψ‖``."""
    vec = _dense(state, H.n_sites)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ValueError("zero state")
    return float(np.linalg.norm(H.matrix @ vec) / norm)


def kernel_dimension(H: SparseHamiltonian, tol: float = 1e-9) -> int:
    """Number of eigenvalues below ``tol``, via dense eigensolves per magnetisation sector."""
    if H.n_sites > MAX_EIGEN_SITES:
        raise ValueError(f"dense eigensolve capped at {MAX_EIGEN_SITES} sites")
    mags = H.magnetization()
    count = 0
    for m in np.unique(mags):
        sel = np.flatnonzero(mags == m)
        block = H.matrix[sel][:, sel].toarray()
        evals = np.linalg.eigvalsh(block)
        count += int(np.sum(evals < tol))
    return count
