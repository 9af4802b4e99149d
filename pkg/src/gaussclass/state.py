"""Gaussian states at the parameter level: mean vector and covariance matrix."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, InvalidState, NotPSD, NotSymplectic, NotUnitary
from .symplectic import (
    DEFAULT_TOL,
    Tolerances,
    embed_complex,
    embed_vector,
    extract_vector,
    hermitian_psd_check,
    is_symplectic,
    is_unitary,
    standard_symplectic_form,
    symmetrize,
)


@dataclass(frozen=True)
class GaussianState:
    """An ``n``-mode Gaussian state.

    ``mean`` is the complex mean annihilation vector; ``cov`` is the real
    ``2n x 2n`` covariance matrix in ``(x, y)`` ordering.  Construction only
    checks shapes and finiteness, so physically invalid matrices can be held
    (and rejected later by :func:`validate`).
    """

    mean: np.ndarray
    cov: np.ndarray
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=complex).reshape(-1)
        cov = np.asarray(self.cov, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
            raise DimensionError(f"covariance must be 2n x 2n, got shape {cov.shape}")
        if cov.shape[0] != 2 * mean.size:
            raise DimensionError(
                f"mean has {mean.size} modes but covariance is {cov.shape[0]} x {cov.shape[1]}"
            )
        if mean.size == 0:
            raise DimensionError("a state needs at least one mode")
        if not (np.all(np.isfinite(cov)) and np.all(np.isfinite(mean))):
            raise DimensionError("state has non-finite entries")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n(self) -> int:
        return self.mean.size

    @property
    def mean_R(self) -> np.ndarray:
        return embed_vector(self.mean)

    @classmethod
    def vacuum(cls, n: int = 1) -> GaussianState:
        return cls(np.zeros(n), 0.5 * np.eye(2 * n))

    @classmethod
    def coherent(cls, alpha) -> GaussianState:
        alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
        return cls(alpha, 0.5 * np.eye(2 * alpha.size))

    @classmethod
    def thermal(cls, nbar) -> GaussianState:
        """Product of thermal modes with the given mean photon numbers."""
        nbar = np.atleast_1d(np.asarray(nbar, dtype=float))
        return cls(np.zeros(nbar.size), np.diag(np.concatenate([nbar, nbar]) + 0.5))


@dataclass(frozen=True)
class ClassicalNoise:
    """Classical normal distribution with real mean ``mu_R`` and covariance ``sigma_R``."""

    mu_R: np.ndarray
    sigma_R: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu_R, dtype=float).reshape(-1)
        sigma = np.asarray(self.sigma_R, dtype=float)
        if sigma.ndim != 2 or sigma.shape != (mu.size, mu.size) or mu.size % 2:
            raise DimensionError(
                f"noise mean of length {mu.size} does not match covariance {sigma.shape}"
            )
        object.__setattr__(self, "mu_R", mu)
        object.__setattr__(self, "sigma_R", sigma)

    @property
    def n(self) -> int:
        return self.mu_R.size // 2


@dataclass(frozen=True)
class ValidityReport:
    symmetric: bool
    uncertainty_ok: bool
    min_eig: float
    sympl_eigs: np.ndarray

    @property
    def valid(self) -> bool:
        return self.symmetric and self.uncertainty_ok


def validate(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> ValidityReport:
    """Check symmetry and the uncertainty relation ``S + (i/2) J >= 0``."""
    from .williamson import symplectic_eigenvalues

    cov = state.cov
    n = state.n
    deviation = np.linalg.norm(cov - cov.T)
    symmetric = bool(deviation <= tol.sym_tol * (1 + np.linalg.norm(cov)))
    cov = (cov + cov.T) / 2
    J = standard_symplectic_form(n)
    check = hermitian_psd_check(cov + 0.5j * J, tol)
    uncertainty_ok = bool(symmetric and check.ok)
    try:
        sympl = symplectic_eigenvalues(cov, tol)
    except Exception:
        sympl = np.full(n, np.nan)
    return ValidityReport(symmetric, uncertainty_ok, check.value, sympl)


def require_valid(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Return the symmetrized covariance of a valid state or raise :class:`InvalidState`."""
    report = validate(state, tol)
    if not report.valid:
        raise InvalidState(
            f"not a valid Gaussian state (min eigenvalue of S + iJ/2 is {report.min_eig:.3e})",
            report.min_eig,
        )
    return (state.cov + state.cov.T) / 2


def characteristic_function(state: GaussianState, z, tol: Tolerances = DEFAULT_TOL) -> complex:
    """``exp(-2i [x y] J m_R - [x y] S [x y]^T)`` at ``z = x + i y``."""
    cov = require_valid(state, tol)
    z_R = embed_vector(z)
    if z_R.size != cov.shape[0]:
        raise DimensionError(f"probe has {z_R.size // 2} modes, state has {state.n}")
    J = standard_symplectic_form(state.n)
    phase = z_R @ J @ state.mean_R
    quad = z_R @ cov @ z_R
    return complex(np.exp(-2j * phase - quad))


def displace(state: GaussianState, u) -> GaussianState:
    u = np.asarray(u, dtype=complex).reshape(-1)
    if u.size != state.n:
        raise DimensionError(f"displacement has {u.size} modes, state has {state.n}")
    return GaussianState(state.mean + u, state.cov, state.label)


def apply_symplectic(state: GaussianState, L, tol: Tolerances = DEFAULT_TOL) -> GaussianState:
    """Act by the symplectic map ``L``: ``m -> L m``, ``S -> L^{-T} S L^{-1}``."""
    L = np.asarray(L, dtype=float)
    if L.shape != state.cov.shape:
        raise DimensionError(f"map of shape {L.shape} does not act on {state.n} modes")
    check = is_symplectic(L, tol)
    if not check:
        raise NotSymplectic(f"map is not symplectic (residual {check.value:.3e})", check.value)
    cov = require_valid(state, tol)
    # X = S L^{-1} via L^T X^T = S^T, then L^{-T} X
    X = np.linalg.solve(L.T, cov).T
    new = np.linalg.solve(L.T, X)
    new = (new + new.T) / 2
    return GaussianState(extract_vector(L @ state.mean_R), new, state.label)


def apply_passive(state: GaussianState, U, tol: Tolerances = DEFAULT_TOL) -> GaussianState:
    """Act by the passive unitary of ``U``: ``m -> U m``, ``S -> U_R S U_R^T``."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (state.n, state.n):
        raise DimensionError(f"unitary of shape {U.shape} does not act on {state.n} modes")
    check = is_unitary(U, tol)
    if not check:
        raise NotUnitary(f"matrix is not unitary (residual {check.value:.3e})", check.value)
    cov = require_valid(state, tol)
    U_R = embed_complex(U)
    new = U_R @ cov @ U_R.T
    return GaussianState(U @ state.mean, (new + new.T) / 2, state.label)


def gaussian_average(state: GaussianState, noise: ClassicalNoise,
                     tol: Tolerances = DEFAULT_TOL) -> GaussianState:
    """Average displaced copies of ``state`` over a classical normal distribution.

    The result has mean ``m + mu`` and covariance ``S + 2 J^T Sigma J``.
    """
    if noise.n != state.n:
        raise DimensionError(f"noise acts on {noise.n} modes, state has {state.n}")
    cov = require_valid(state, tol)
    sigma = symmetrize(noise.sigma_R, tol)
    check = hermitian_psd_check(sigma, tol)
    if not check:
        raise NotPSD(f"noise covariance is not PSD (min eigenvalue {check.value:.3e})", check.value)
    J = standard_symplectic_form(state.n)
    new = cov + 2 * J.T @ sigma @ J
    return GaussianState(state.mean + extract_vector(noise.mu_R), (new + new.T) / 2, state.label)
