"""Glauber-Sudarshan representation of classical Gaussian states.

A classical Gaussian state is a mixture of coherent states ``|alpha><alpha|``
weighted by a normal density ``p`` over ``alpha_R = (Re alpha, Im alpha)``.
The quantum covariance is ``S = I/2 + 2 J^T Sigma J`` where ``Sigma`` is the
covariance of ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import is_classical, is_csgs, is_pun
from .errors import NonzeroMean, NotClassical, NotPSD, SingularSigma
from .state import ClassicalNoise, GaussianState, require_valid
from .symplectic import (
    DEFAULT_TOL,
    Tolerances,
    embed_complex,
    embed_vector,
    extract_complex,
    hermitian_psd_check,
    standard_symplectic_form,
    symmetrize,
)
from .williamson import williamson_decompose


def _clip_psd(sigma, tol):
    # eigenvalues in (-psd_tol, 0) are rounding noise from boundary states
    w, V = np.linalg.eigh(sigma)
    floor = -tol.psd_tol * (1 + np.linalg.norm(sigma))
    if w[0] < floor:
        raise NotPSD(f"noise covariance has eigenvalue {w[0]:.3e}", float(w[0]))
    if w[0] >= 0:
        return sigma
    clipped = (V * np.clip(w, 0.0, None)) @ V.T
    return (clipped + clipped.T) / 2


def classical_covariance(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> ClassicalNoise:
    """Noise parameters ``(m_R, J (S - I/2) J^T / 2)`` of a classical state."""
    check = is_classical(state, tol)
    if not check:
        raise NotClassical(f"S - I/2 has negative eigenvalue {check.value:.3e}", check.value)
    cov = require_valid(state, tol)
    n = state.n
    J = standard_symplectic_form(n)
    sigma = 0.5 * J @ (cov - 0.5 * np.eye(2 * n)) @ J.T
    sigma = _clip_psd((sigma + sigma.T) / 2, tol)
    return ClassicalNoise(state.mean_R, sigma)


def quantum_covariance(noise: ClassicalNoise, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``I/2 + 2 J^T Sigma J``."""
    sigma = symmetrize(noise.sigma_R, tol)
    check = hermitian_psd_check(sigma, tol)
    if not check:
        raise NotPSD(f"noise covariance is not PSD (min eigenvalue {check.value:.3e})", check.value)
    J = standard_symplectic_form(noise.n)
    cov = 0.5 * np.eye(2 * noise.n) + 2 * J.T @ sigma @ J
    return (cov + cov.T) / 2


def p_density(noise: ClassicalNoise, alpha, tol: Tolerances = DEFAULT_TOL) -> float:
    """Normal density of ``noise`` at ``alpha_R = (Re alpha, Im alpha)``."""
    sigma = symmetrize(noise.sigma_R, tol)
    w = np.linalg.eigvalsh(sigma)
    if w[0] <= tol.eig_floor * (1 + np.linalg.norm(sigma)):
        raise SingularSigma(
            f"noise covariance is singular (min eigenvalue {w[0]:.3e}); the density is undefined",
            float(w[0]),
        )
    delta = embed_vector(alpha) - noise.mu_R
    if delta.size != sigma.shape[0]:
        raise ValueError(f"alpha has {delta.size // 2} modes, noise has {noise.n}")
    chol = np.linalg.cholesky(sigma)
    white = np.linalg.solve(chol, delta)
    log_det = 2 * np.sum(np.log(np.diagonal(chol)))
    n = noise.n
    return float(np.exp(-0.5 * white @ white - 0.5 * log_det - n * np.log(2 * np.pi)))


@dataclass(frozen=True)
class PFunctionForm:
    """One row of the classical-state table.

    ``N`` are mean photon numbers of the normal modes.  ``transform`` is
    ``None`` for CSGS, the unitary ``U`` for PUNGS (a complex ``n x n``
    matrix) and the real ``2n x 2n`` symplectic matrix of ``L`` for CGS; the
    density is ``exp(-sum_j |(T alpha)_j|^2 / N_j) / (pi^n prod N_j)``.
    """

    class_tag: str
    N: np.ndarray
    transform: np.ndarray | None = None

    def sigma_R(self) -> np.ndarray:
        """Classical covariance described by this form."""
        half = np.diag(np.concatenate([self.N, self.N])) / 2
        if self.class_tag == "CSGS":
            return half
        if self.class_tag == "PUNGS":
            U = self.transform
            return embed_complex(U.conj().T @ np.diag(self.N / 2) @ U)
        L_inv = np.linalg.inv(self.transform)
        sigma = L_inv @ half @ L_inv.T
        return (sigma + sigma.T) / 2


def table_density(form: PFunctionForm, alpha, tol: Tolerances = DEFAULT_TOL) -> float:
    """Evaluate the p-function of ``form`` at ``alpha`` from its table formula."""
    N = form.N
    n = N.size
    if np.any(N <= tol.eig_floor):
        raise SingularSigma("a normal mode has zero photon number; the density is undefined")
    alpha = np.asarray(alpha, dtype=complex).reshape(-1)
    if form.class_tag == "CSGS":
        beta = alpha
    elif form.class_tag == "PUNGS":
        beta = form.transform @ alpha
    else:
        b_R = form.transform @ embed_vector(alpha)
        beta = b_R[:n] + 1j * b_R[n:]
    return float(np.exp(-np.sum(np.abs(beta) ** 2 / N)) / (np.pi**n * np.prod(N)))


def table_form(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> PFunctionForm:
    """Identify the table row of a mean-zero classical state.

    Raises
    ------
    NotClassical
    NonzeroMean
    SingularSigma
        for a CGS (non-PUN) state with singular noise covariance.
    """
    noise = classical_covariance(state, tol)
    if np.linalg.norm(state.mean) > tol.residual_tol:
        raise NonzeroMean(
            f"table forms describe mean-zero states (|m| = {np.linalg.norm(state.mean):.3e})",
            float(np.linalg.norm(state.mean)),
        )
    sigma = noise.sigma_R
    csgs = is_csgs(state, tol)
    if csgs:
        form = PFunctionForm("CSGS", 2 * csgs.N)
    elif is_pun(state, tol):
        K = extract_complex(sigma, tol)
        k, V = np.linalg.eigh((K + K.conj().T) / 2)
        k, V = np.clip(k[::-1], 0.0, None), V[:, ::-1]
        form = PFunctionForm("PUNGS", 2 * k, V.conj().T)
    else:
        if np.linalg.eigvalsh(sigma)[0] <= tol.eig_floor * (1 + np.linalg.norm(sigma)):
            raise SingularSigma("noise covariance is singular; no symplectic normal form")
        dec = williamson_decompose(sigma, tol)
        form = PFunctionForm("CGS", 2 * dec.d, dec.L.T)
    residual = np.linalg.norm(form.sigma_R() - sigma)
    if residual > tol.residual_tol * (1 + np.linalg.norm(sigma)):
        raise NotClassical(f"table form does not reproduce the noise (residual {residual:.3e})", residual)
    return form
