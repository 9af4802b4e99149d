"""The ``(mu, A, Lambda)`` parametrization of Gaussian states.

``A`` is complex symmetric (the squeezing content), ``Lambda`` is Hermitian
positive semidefinite (the thermal content) and ``mu`` is the linear
coefficient of the exponential-vector generating function.  The link to the
covariance matrix is ``(I/2 + S)^{-1} = M(-A, Lambda)`` where

    M(A, Lambda) = I - [[Re L, -Im L], [Im L, Re L]] - 2 [[Re A, Im A], [Im A, -Re A]].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidParams, NotHermitian, NotUnitary, SingularMeanMap
from .state import GaussianState, require_valid
from .symplectic import (
    DEFAULT_TOL,
    Tolerances,
    embed_complex,
    embed_vector,
    extract_vector,
    is_unitary,
    j_commutant_split,
)


@dataclass(frozen=True)
class ALambdaParams:
    mu: np.ndarray
    A: np.ndarray
    Lambda: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=complex).reshape(-1)
        A = np.asarray(self.A, dtype=complex)
        Lam = np.asarray(self.Lambda, dtype=complex)
        n = mu.size
        if A.shape != (n, n) or Lam.shape != (n, n):
            raise DimensionError(
                f"mu has {n} modes but A is {A.shape} and Lambda is {Lam.shape}"
            )
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "Lambda", Lam)

    @property
    def n(self) -> int:
        return self.mu.size


@dataclass(frozen=True)
class ParamReport:
    m_pd: bool
    min_eig: float
    normA: float
    normLambda: float
    symmetric_A: bool
    lambda_psd: bool

    @property
    def valid(self) -> bool:
        return (
            self.m_pd
            and self.symmetric_A
            and self.lambda_psd
            and self.normA < 0.5
            and self.normLambda < 1.0
        )


def antilinear_block(A) -> np.ndarray:
    """Real matrix of ``z -> A conj(z)``: ``[[Re A, Im A], [Im A, -Re A]]``."""
    A = np.asarray(A, dtype=complex)
    return np.block([[A.real, A.imag], [A.imag, -A.real]])


def m_matrix(A, Lambda) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    Lambda = np.asarray(Lambda, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or Lambda.shape != A.shape:
        raise DimensionError(f"A {A.shape} and Lambda {Lambda.shape} must be equal square shapes")
    n = A.shape[0]
    M = np.eye(2 * n) - embed_complex(Lambda) - 2 * antilinear_block(A)
    return (M + M.T) / 2


def validate_params(A, Lambda, tol: Tolerances = DEFAULT_TOL) -> ParamReport:
    A = np.asarray(A, dtype=complex)
    Lambda = np.asarray(Lambda, dtype=complex)
    M = m_matrix(A, Lambda)
    min_eig = float(np.linalg.eigvalsh(M)[0])
    sym_A = bool(np.linalg.norm(A - A.T) <= tol.sym_tol * (1 + np.linalg.norm(A)))
    herm = bool(np.linalg.norm(Lambda - Lambda.conj().T) <= tol.sym_tol * (1 + np.linalg.norm(Lambda)))
    lam_min = np.linalg.eigvalsh((Lambda + Lambda.conj().T) / 2)[0] if Lambda.size else 0.0
    return ParamReport(
        m_pd=min_eig > tol.psd_tol,
        min_eig=min_eig,
        normA=float(np.linalg.norm(A, 2)) if A.size else 0.0,
        normLambda=float(np.linalg.norm(Lambda, 2)) if Lambda.size else 0.0,
        symmetric_A=sym_A,
        lambda_psd=bool(herm and lam_min >= -tol.psd_tol),
    )


def _require_params(params: ALambdaParams, tol: Tolerances) -> ParamReport:
    report = validate_params(params.A, params.Lambda, tol)
    if not report.valid:
        raise InvalidParams(
            "invalid (A, Lambda): "
            f"min eig M = {report.min_eig:.3e}, ||A|| = {report.normA:.3e}, "
            f"||Lambda|| = {report.normLambda:.3e}",
            report.min_eig,
        )
    return report


def c_normalization(A, Lambda, tol: Tolerances = DEFAULT_TOL) -> float:
    """``sqrt(det M(A, Lambda))``."""
    M = m_matrix(A, Lambda)
    sign, logdet = np.linalg.slogdet(M)
    if sign <= 0 or np.linalg.eigvalsh(M)[0] <= tol.psd_tol:
        raise InvalidParams("M(A, Lambda) is not positive definite")
    return float(np.exp(0.5 * logdet))


def from_covariance(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> ALambdaParams:
    """Convert a valid state to ``(mu, A, Lambda)``."""
    cov = require_valid(state, tol)
    n = state.n
    I = np.eye(2 * n)
    T = I - np.linalg.solve(0.5 * I + cov, I)
    T_c, T_a = j_commutant_split((T + T.T) / 2)
    Lambda = (T_c[:n, :n] + T_c[n:, n:]) / 2 + 1j * (T_c[n:, :n] - T_c[:n, n:]) / 2
    # T_a = -2 [[Re A, Im A], [Im A, -Re A]]
    B = -0.5 * T_a
    A = (B[:n, :n] - B[n:, n:]) / 2 + 1j * (B[:n, n:] + B[n:, :n]) / 2
    if np.linalg.norm(A - A.T) > tol.sym_tol * (1 + np.linalg.norm(A)):
        raise NotHermitian("extracted A is not symmetric", float(np.linalg.norm(A - A.T)))
    if np.linalg.norm(Lambda - Lambda.conj().T) > tol.sym_tol * (1 + np.linalg.norm(Lambda)):
        raise NotHermitian("extracted Lambda is not Hermitian")
    A = (A + A.T) / 2
    Lambda = (Lambda + Lambda.conj().T) / 2
    mu_R = m_matrix(A, Lambda) @ state.mean_R
    return ALambdaParams(extract_vector(mu_R), A, Lambda)


def mean_from_mu(params: ALambdaParams, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Solve ``(I - Lambda - 2 A C) m = mu`` as a real ``2n x 2n`` system.

    The real matrix of ``I - Lambda - 2 A C`` is ``M(A, Lambda)`` itself.
    """
    M = m_matrix(params.A, params.Lambda)
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond * tol.eig_floor > 1:
        raise SingularMeanMap(f"mean map is singular (condition number {cond:.3e})", cond)
    return extract_vector(np.linalg.solve(M, embed_vector(params.mu)))


def to_covariance(params: ALambdaParams, tol: Tolerances = DEFAULT_TOL) -> GaussianState:
    _require_params(params, tol)
    n = params.n
    M_minus = m_matrix(-params.A, params.Lambda)
    if np.linalg.eigvalsh(M_minus)[0] <= tol.psd_tol:
        raise InvalidParams("M(-A, Lambda) is not positive definite")
    I = np.eye(2 * n)
    cov = np.linalg.solve(M_minus, I) - 0.5 * I
    return GaussianState(mean_from_mu(params, tol), (cov + cov.T) / 2)


def generating_function(params: ALambdaParams, u, v, tol: Tolerances = DEFAULT_TOL) -> complex:
    """``<e(conj u)| rho |e(v)>`` for the state with parameters ``params``.

    Equals ``c(A, Lambda) exp(u^T mu + conj(mu)^T v + u^T A u + u^T Lambda v
    + v^T conj(A) v)`` times the mean-dependent constant
    ``exp(-mu_R^T M(A, Lambda)^{-1} mu_R)``, which is 1 for mean-zero states.
    """
    _require_params(params, tol)
    u = np.asarray(u, dtype=complex).reshape(-1)
    v = np.asarray(v, dtype=complex).reshape(-1)
    if u.size != params.n or v.size != params.n:
        raise DimensionError(f"probes must have {params.n} modes")
    mu, A, Lam = params.mu, params.A, params.Lambda
    mu_R = embed_vector(mu)
    offset = -mu_R @ np.linalg.solve(m_matrix(A, Lam), mu_R)
    exponent = u @ mu + mu.conj() @ v + u @ A @ u + u @ Lam @ v + v @ A.conj() @ v
    return complex(c_normalization(A, Lam, tol) * np.exp(exponent + offset))


def passive_transform(params: ALambdaParams, U, tol: Tolerances = DEFAULT_TOL) -> ALambdaParams:
    """Parameters after the passive unitary of ``U``: ``(U mu, U A U^T, U Lambda U^dag)``."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (params.n, params.n):
        raise DimensionError(f"unitary of shape {U.shape} does not act on {params.n} modes")
    check = is_unitary(U, tol)
    if not check:
        raise NotUnitary(f"matrix is not unitary (residual {check.value:.3e})", check.value)
    return ALambdaParams(U @ params.mu, U @ params.A @ U.T, U @ params.Lambda @ U.conj().T)
