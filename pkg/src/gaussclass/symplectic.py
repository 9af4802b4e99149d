"""Real/complex matrix substrate for phase-space computations.

Phase-space vectors are ordered ``(x_1, ..., x_n, y_1, ..., y_n)`` where the
complex vector is ``x + i y``.  Under this ordering the symplectic form is

    J = [[0, I_n], [-I_n, 0]]

and a complex matrix ``M`` acts on the real vector through
``[[Re M, -Im M], [Im M, Re M]]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotHermitian, NotJCommuting


@dataclass(frozen=True)
class Tolerances:
    """Numeric policy shared by every predicate.

    All thresholds are relative to the scale ``1 + ||M||_F`` of the matrix
    being tested unless a function documents otherwise.
    """

    sym_tol: float = 1e-10
    psd_tol: float = 1e-10
    commutator_tol: float = 1e-9
    residual_tol: float = 1e-9
    eig_floor: float = 1e-12

    def __post_init__(self):
        for name in ("sym_tol", "psd_tol", "commutator_tol", "residual_tol", "eig_floor"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"tolerance {name} must be finite and >= 0, got {value!r}")

    def as_dict(self) -> dict:
        return {
            "sym_tol": self.sym_tol,
            "psd_tol": self.psd_tol,
            "commutator_tol": self.commutator_tol,
            "residual_tol": self.residual_tol,
            "eig_floor": self.eig_floor,
        }


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class Check:
    """Outcome of a predicate: truthy iff ``ok``; ``value`` is its certificate.

    The meaning of ``value`` depends on the predicate (a residual norm, a
    minimum eigenvalue, ...).
    """

    ok: bool
    value: float

    def __bool__(self):
        return bool(self.ok)


def _as_matrix(M, dtype=float) -> np.ndarray:
    M = np.asarray(M, dtype=dtype)
    if M.ndim != 2:
        raise DimensionError(f"expected a matrix, got array of shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DimensionError("matrix has non-finite entries")
    return M


def _square_even(M) -> int:
    rows, cols = M.shape
    if rows != cols:
        raise DimensionError(f"matrix must be square, got {M.shape}")
    if rows % 2:
        raise DimensionError(f"phase-space matrix must have even dimension, got {rows}")
    return rows // 2


def standard_symplectic_form(n: int) -> np.ndarray:
    """Return the ``2n x 2n`` matrix ``[[0, I], [-I, 0]]``."""
    if int(n) != n or n < 1:
        raise DimensionError(f"mode count must be a positive integer, got {n!r}")
    n = int(n)
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def embed_complex(M) -> np.ndarray:
    """Real ``2n x 2n`` matrix of the complex-linear map ``M``."""
    M = _as_matrix(M, complex)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"matrix must be square, got {M.shape}")
    re, im = M.real, M.imag
    return np.block([[re, -im], [im, re]])


def embed_vector(v) -> np.ndarray:
    """``(Re v, Im v)`` for a complex vector ``v``."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    return np.concatenate([v.real, v.imag])


def extract_vector(v_R) -> np.ndarray:
    v_R = np.asarray(v_R, dtype=float).reshape(-1)
    if v_R.size % 2:
        raise DimensionError(f"real phase-space vector must have even length, got {v_R.size}")
    n = v_R.size // 2
    return v_R[:n] + 1j * v_R[n:]


def commutator_residual(M) -> float:
    """Frobenius norm of ``M J - J M``."""
    M = _as_matrix(M)
    n = _square_even(M)
    J = standard_symplectic_form(n)
    return float(np.linalg.norm(M @ J - J @ M))


def j_commutant_split(T) -> tuple[np.ndarray, np.ndarray]:
    """Split ``T`` into parts commuting and anticommuting with ``J``.

    Uses ``J^{-1} = -J``: ``T_c = (T - J T J) / 2`` and ``T_a = (T + J T J) / 2``.
    """
    T = _as_matrix(T)
    n = _square_even(T)
    J = standard_symplectic_form(n)
    JTJ = J @ T @ J
    return (T - JTJ) / 2, (T + JTJ) / 2


def extract_complex(M_R, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Inverse of :func:`embed_complex` for matrices commuting with ``J``.

    The block form ``[[E, F], [G, H]]`` is projected onto the commutant before
    reading off the complex matrix, so ``embed_complex`` of the result is the
    J-commuting part of ``M_R``.

    Raises
    ------
    NotJCommuting
        if ``||M_R J - J M_R||_F > commutator_tol * (1 + ||M_R||_F)``.
    """
    M_R = _as_matrix(M_R)
    n = _square_even(M_R)
    residual = commutator_residual(M_R)
    if residual > tol.commutator_tol * (1 + np.linalg.norm(M_R)):
        raise NotJCommuting(
            f"matrix does not commute with J (residual {residual:.3e})", residual
        )
    E, F = M_R[:n, :n], M_R[:n, n:]
    G, H = M_R[n:, :n], M_R[n:, n:]
    return (E + H) / 2 + 1j * (G - F) / 2


def symmetrize(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Return ``(M + M^T) / 2``, rejecting inputs that are far from symmetric."""
    M = _as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"matrix must be square, got {M.shape}")
    deviation = float(np.linalg.norm(M - M.T))
    if deviation > tol.sym_tol * (1 + np.linalg.norm(M)):
        raise NotHermitian(f"matrix is not symmetric (deviation {deviation:.3e})", deviation)
    return (M + M.T) / 2


def hermitize(H, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    H = _as_matrix(H, complex)
    if H.shape[0] != H.shape[1]:
        raise DimensionError(f"matrix must be square, got {H.shape}")
    deviation = float(np.linalg.norm(H - H.conj().T))
    if deviation > tol.sym_tol * (1 + np.linalg.norm(H)):
        raise NotHermitian(f"matrix is not Hermitian (deviation {deviation:.3e})", deviation)
    return (H + H.conj().T) / 2


def is_symplectic(M, tol: Tolerances = DEFAULT_TOL) -> Check:
    """Test ``M^T J M = J``; ``value`` is ``||M^T J M - J||_F``."""
    M = _as_matrix(M)
    n = _square_even(M)
    J = standard_symplectic_form(n)
    residual = float(np.linalg.norm(M.T @ J @ M - J))
    scale = 1 + np.linalg.norm(M) ** 2
    return Check(residual <= tol.commutator_tol * scale, residual)


def is_orthosymplectic(M, tol: Tolerances = DEFAULT_TOL) -> Check:
    """Symplectic and orthogonal; ``value`` is the larger of the two residuals."""
    M = _as_matrix(M)
    sympl = is_symplectic(M, tol)
    orth = float(np.linalg.norm(M.T @ M - np.eye(M.shape[0])))
    ok = sympl.ok and orth <= tol.commutator_tol * (1 + np.linalg.norm(M))
    return Check(ok, max(sympl.value, orth))


def is_unitary(U, tol: Tolerances = DEFAULT_TOL) -> Check:
    U = _as_matrix(U, complex)
    if U.shape[0] != U.shape[1]:
        raise DimensionError(f"matrix must be square, got {U.shape}")
    residual = float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0])))
    return Check(residual <= tol.commutator_tol * (1 + np.linalg.norm(U)), residual)


def hermitian_psd_check(H, tol: Tolerances = DEFAULT_TOL) -> Check:
    """PSD test by full eigendecomposition; ``value`` is the minimum eigenvalue.

    Near-Hermitian input is Hermitized first; larger deviations raise
    :class:`NotHermitian`.
    """
    H = hermitize(H, tol)
    eigs = np.linalg.eigvalsh(H)
    lam_min = float(eigs[0])
    return Check(lam_min >= -tol.psd_tol * (1 + np.linalg.norm(H, 2)), lam_min)
