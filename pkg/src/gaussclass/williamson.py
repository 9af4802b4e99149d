"""Symplectic spectra, Williamson normal form and thermal parameters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    NotAState,
    NotPositiveDefinite,
    NotPUNCovariance,
)
from .symplectic import (
    DEFAULT_TOL,
    Tolerances,
    _square_even,
    commutator_residual,
    extract_complex,
    standard_symplectic_form,
    symmetrize,
)


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """``L^T S L = diag(d) + diag(d)`` with ``L`` symplectic, ``d`` descending."""

    L: np.ndarray
    d: np.ndarray

    @property
    def D_R(self) -> np.ndarray:
        return np.diag(np.concatenate([self.d, self.d]))


@dataclass(frozen=True)
class ThermalParameters:
    """Inverse temperatures ``s`` (``inf`` for vacuum modes) and mean photon numbers."""

    s: np.ndarray
    nbar: np.ndarray


def _pd_sqrt(S, tol):
    S = symmetrize(S, tol)
    _square_even(S)
    w, V = np.linalg.eigh(S)
    floor = tol.eig_floor * (1 + np.linalg.norm(S))
    if w[0] <= floor:
        raise NotPositiveDefinite(
            f"matrix is not positive definite (min eigenvalue {w[0]:.3e})", float(w[0])
        )
    root = np.sqrt(w)
    return S, (V * root) @ V.T, (V / root) @ V.T


def symplectic_eigenvalues(S, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Symplectic eigenvalues of a positive definite ``S``, descending.

    Computed as the positive eigenvalues of the Hermitian matrix
    ``i S^{1/2} J S^{1/2}``, which is similar to ``i J S``.
    """
    S, root, _ = _pd_sqrt(S, tol)
    n = S.shape[0] // 2
    J = standard_symplectic_form(n)
    W = root @ J @ root
    eigs = np.linalg.eigvalsh(1j * (W - W.T) / 2)
    return eigs[n:][::-1].copy()


def _fix_phase(v, cutoff):
    # first non-negligible entry becomes i|v_k|, so the matching column of O
    # starts with a positive entry
    idx = int(np.argmax(np.abs(v) > cutoff))
    return v * (1j * abs(v[idx]) / v[idx])


def williamson_decompose(S, tol: Tolerances = DEFAULT_TOL) -> WilliamsonDecomposition:
    """Williamson normal form of a symmetric positive definite matrix.

    With ``W = S^{1/2} J S^{1/2}`` (antisymmetric), each positive eigenpair
    ``(d_j, a_j + i b_j)`` of ``i W`` yields orthonormal real vectors with
    ``W a_j = d_j b_j`` and ``W b_j = -d_j a_j``.  Setting
    ``O = sqrt(2) [b_1 .. b_n, a_1 .. a_n]`` gives
    ``O^T W O = [[0, D], [-D, 0]]`` and ``L = S^{-1/2} O (D^{1/2} + D^{1/2})``
    satisfies ``L^T S L = D + D`` and ``L^T J L = J``.

    Raises
    ------
    NotPositiveDefinite
    ConvergenceFailure
        if either defining residual exceeds ``residual_tol``.
    """
    S, root, inv_root = _pd_sqrt(S, tol)
    n = S.shape[0] // 2
    J = standard_symplectic_form(n)
    W = root @ J @ root
    W = (W - W.T) / 2
    eigs, vecs = np.linalg.eigh(1j * W)
    d = eigs[n:][::-1].copy()
    vecs = vecs[:, n:][:, ::-1]
    cutoff = 1e-8 / np.sqrt(2 * n)
    vecs = np.column_stack([_fix_phase(vecs[:, j], cutoff) for j in range(n)])
    O = np.sqrt(2) * np.hstack([vecs.imag, vecs.real])
    root_d = np.sqrt(np.concatenate([d, d]))
    L = inv_root @ O * root_d
    # one first-order step back onto the symplectic group
    E = L.T @ J @ L - J
    L = L @ (np.eye(2 * n) + 0.5 * J @ (E - E.T) / 2)

    sym_res = np.linalg.norm(L.T @ J @ L - J)
    diag_res = np.linalg.norm(L.T @ S @ L - np.diag(np.concatenate([d, d])))
    if sym_res > tol.residual_tol * (1 + np.linalg.norm(L) ** 2) or diag_res > tol.residual_tol * np.linalg.norm(S):
        raise ConvergenceFailure(
            f"Williamson residuals too large (symplectic {sym_res:.3e}, diagonal {diag_res:.3e})",
            max(sym_res, diag_res),
        )
    return WilliamsonDecomposition(L, d)


def orthosymplectic_diagonalize(S, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a J-commuting covariance by a passive (orthosymplectic) map.

    Returns ``(U, D)`` with ``U`` unitary and
    ``embed_complex(U) S embed_complex(U)^T = diag(D) + diag(D)``; ``D`` holds
    the eigenvalues of ``X = extract_complex(S)`` in descending order.
    """
    S = symmetrize(S, tol)
    _square_even(S)
    residual = commutator_residual(S)
    if residual > tol.commutator_tol * (1 + np.linalg.norm(S)):
        raise NotPUNCovariance(
            f"covariance does not commute with J (residual {residual:.3e})", residual
        )
    X = extract_complex(S, tol)
    X = (X + X.conj().T) / 2
    D, V = np.linalg.eigh(X)
    if D[0] <= tol.eig_floor * (1 + np.linalg.norm(S)):
        raise NotPositiveDefinite(
            f"matrix is not positive definite (min eigenvalue {D[0]:.3e})", float(D[0])
        )
    D, V = D[::-1].copy(), V[:, ::-1]
    return V.conj().T, D


def thermal_parameters(d, tol: Tolerances = DEFAULT_TOL) -> ThermalParameters:
    """Invert ``d_j = coth(s_j / 2) / 2`` mode by mode.

    Modes within ``eig_floor`` of 1/2 are vacuum modes (``s = inf``).
    """
    d = np.atleast_1d(np.asarray(d, dtype=float))
    if np.any(d < 0.5 - tol.psd_tol):
        bad = float(d.min())
        raise NotAState(f"symplectic eigenvalue {bad!r} is below the vacuum value 1/2", bad)
    s = np.full(d.shape, np.inf)
    finite = d > 0.5 + tol.eig_floor
    s[finite] = np.log((2 * d[finite] + 1) / (2 * d[finite] - 1))
    nbar = np.where(finite, d - 0.5, 0.0)
    return ThermalParameters(s, nbar)


def symplectic_from_thermal(s) -> np.ndarray:
    """``coth(s/2)/2`` with ``s = inf`` mapped to 1/2."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    out = np.full(s.shape, 0.5)
    finite = np.isfinite(s)
    out[finite] = 0.5 / np.tanh(s[finite] / 2)
    return out
