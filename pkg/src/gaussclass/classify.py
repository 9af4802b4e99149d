"""Membership in the lattice GS > CGS > PUN > CSGS, with certificates.

A state is passive-unitary normalizable (PUN) when a passive unitary brings
it to a displaced product of thermal modes.  Four independent numerical
routes decide PUN membership here and :func:`classify` insists they agree:

* the covariance commutes with ``J``;
* the covariance is the real embedding of a complex matrix;
* the squeezing parameter ``A`` of the ``(mu, A, Lambda)`` form vanishes;
* the classical noise covariance is the embedding of a complex PSD ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import alambda
from .errors import InconsistentClassification, NotClassical, NotJCommuting, NotPUN
from .state import GaussianState, require_valid, validate
from .symplectic import (
    DEFAULT_TOL,
    Check,
    Tolerances,
    commutator_residual,
    embed_complex,
    extract_complex,
    j_commutant_split,
    standard_symplectic_form,
)
from .williamson import orthosymplectic_diagonalize, thermal_parameters


def _scale(cov) -> float:
    return 1 + float(np.linalg.norm(cov))


def is_pun(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> Check:
    """``||S J - J S||_F <= commutator_tol (1 + ||S||_F)``; the mean is ignored."""
    cov = require_valid(state, tol)
    residual = commutator_residual(cov)
    return Check(residual <= tol.commutator_tol * _scale(cov), residual)


def is_classical(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> Check:
    """``S >= I/2``; ``value`` is the minimum eigenvalue of ``S - I/2``."""
    cov = require_valid(state, tol)
    lam = float(np.linalg.eigvalsh(cov - 0.5 * np.eye(cov.shape[0]))[0])
    return Check(lam >= -tol.psd_tol * _scale(cov), lam)


@dataclass(frozen=True)
class CSGSCheck:
    """Result of the circular-symmetry test; truthy iff ``ok``.

    ``N`` solves ``S = I/2 + 2 (diag N + diag N)`` in the least-squares sense.
    """

    ok: bool
    N: np.ndarray
    offdiag: float
    mismatch: float

    def __bool__(self):
        return bool(self.ok)


def is_csgs(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> CSGSCheck:
    cov = require_valid(state, tol)
    n = state.n
    diag = np.diagonal(cov)
    offdiag = float(np.linalg.norm(cov - np.diag(diag)))
    mismatch = float(np.linalg.norm(diag[:n] - diag[n:]))
    N = ((diag[:n] + diag[n:]) / 2 - 0.5) / 2
    limit = tol.residual_tol * _scale(cov)
    ok = np.hypot(offdiag, mismatch) <= limit and bool(np.all(N >= -tol.psd_tol * _scale(cov)))
    return CSGSCheck(bool(ok), np.clip(N, 0.0, None), offdiag, mismatch)


@dataclass(frozen=True)
class GaugeCertificate:
    """``sigma_R = embed_complex(K)`` with ``K`` Hermitian PSD.

    ``degenerate`` marks a singular ``K`` (pure modes), for which the classical
    normal distribution has no density.
    """

    sigma_R: np.ndarray
    K: np.ndarray
    min_eig: float
    degenerate: bool

    def __iter__(self):
        return iter((self.sigma_R, self.K))


def _noise_covariance(cov) -> np.ndarray:
    n = cov.shape[0] // 2
    J = standard_symplectic_form(n)
    sigma = 0.5 * J @ (cov - 0.5 * np.eye(2 * n)) @ J.T
    return (sigma + sigma.T) / 2


def gauge_certificate(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> GaugeCertificate:
    """Exhibit a PUN state as gauge invariant.

    Raises
    ------
    NotPUN
    NotClassical
    """
    pun = is_pun(state, tol)
    if not pun:
        raise NotPUN(f"covariance does not commute with J (residual {pun.value:.3e})", pun.value)
    classical = is_classical(state, tol)
    if not classical:
        raise NotClassical(
            f"S - I/2 has negative eigenvalue {classical.value:.3e}", classical.value
        )
    sigma = _noise_covariance(require_valid(state, tol))
    try:
        K = extract_complex(sigma, tol)
    except NotJCommuting as exc:
        raise NotPUN(str(exc), exc.residual) from exc
    K = (K + K.conj().T) / 2
    lam = float(np.linalg.eigvalsh(K)[0])
    scale = _scale(sigma)
    if lam < -tol.psd_tol * scale:
        raise NotClassical(f"gauge matrix K has negative eigenvalue {lam:.3e}", lam)
    return GaugeCertificate(sigma, K, lam, lam <= tol.eig_floor * scale)


@dataclass
class ClassificationReport:
    """Lattice flags, named residuals and certificates for one state.

    Certificates present per attained class: every valid state carries the
    symplectic spectrum, thermal parameters and ``(mu, A, Lambda)``; classical
    states add ``sigma_R``; PUN states add ``U``, ``D`` and ``K``; CSGS states
    add ``N``.
    """

    is_gaussian: bool
    is_classical: bool
    is_pun: bool
    is_csgs: bool
    is_gauge_invariant: bool
    nonzero_mean: bool
    residuals: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)

    @property
    def flags(self) -> dict:
        return {
            "is_gaussian": self.is_gaussian,
            "is_classical": self.is_classical,
            "is_pun": self.is_pun,
            "is_csgs": self.is_csgs,
            "is_gauge_invariant": self.is_gauge_invariant,
            "nonzero_mean": self.nonzero_mean,
        }


def pun_tests(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> dict:
    """Run the independent PUN criteria; returns ``{name: (passed, residual)}``.

    The thresholds are coupled to ``commutator_tol`` so that, up to rounding,
    all criteria describe the same set.
    """
    cov = require_valid(state, tol)
    scale = _scale(cov)
    limit = tol.commutator_tol * scale
    out = {}

    comm = commutator_residual(cov)
    out["commutator"] = (comm <= limit, comm)

    # ||S - embed(X)|| is the anticommuting part, i.e. half the commutator
    S_c, S_a = j_commutant_split(cov)
    block = float(np.linalg.norm(S_a))
    out["block_form"] = (block <= 0.5 * limit, block)

    params = alambda.from_covariance(state, tol)
    # ||A||_F = ||[T, J]||_F / (4 sqrt 2) and ||[S, J]|| <= ||I/2 + S||^2 ||[T, J]||
    stretch = np.linalg.norm(0.5 * np.eye(cov.shape[0]) + cov, 2) ** 2
    a_val = float(np.linalg.norm(params.A)) * 4 * np.sqrt(2) * stretch
    out["A_zero"] = (a_val <= limit, float(np.linalg.norm(params.A)))

    X = S_c[: state.n, : state.n] + 1j * S_c[state.n :, : state.n]
    D, V = np.linalg.eigh((X + X.conj().T) / 2)
    U_R = embed_complex(V.conj().T)
    diag_res = float(np.linalg.norm(U_R @ cov @ U_R.T - np.diag(np.concatenate([D, D]))))
    out["passive_diagonal"] = (diag_res <= 0.5 * limit, diag_res)

    sigma = _noise_covariance(cov)
    _, sigma_a = j_commutant_split(sigma)
    gauge = float(np.linalg.norm(sigma_a))
    lam = float(np.linalg.eigvalsh(cov - 0.5 * np.eye(cov.shape[0]))[0])
    gauge_ok = gauge <= 0.25 * limit and lam >= -tol.psd_tol * scale
    out["gauge"] = (gauge_ok, gauge)
    return out


def classify(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> ClassificationReport:
    """Decide every lattice membership and attach certificates.

    Raises
    ------
    InconsistentClassification
        if the PUN criteria disagree or the implication chain breaks.
    """
    report = validate(state, tol)
    residuals = {"uncertainty_min_eig": report.min_eig}
    nonzero_mean = bool(np.linalg.norm(state.mean) > tol.residual_tol)
    if not report.valid:
        return ClassificationReport(False, False, False, False, False, nonzero_mean, residuals, {})

    cov = require_valid(state, tol)
    certificates: dict = {"sympl_eigs": report.sympl_eigs}
    thermal = thermal_parameters(report.sympl_eigs, tol)
    certificates["s"] = thermal.s
    certificates["nbar"] = thermal.nbar
    params = alambda.from_covariance(state, tol)
    certificates["mu"] = params.mu
    certificates["A"] = params.A
    certificates["Lambda"] = params.Lambda

    classical = is_classical(state, tol)
    residuals["classicality_min_eig"] = classical.value

    votes = pun_tests(state, tol)
    for name, (_, value) in votes.items():
        residuals[f"pun_{name}"] = value
    residuals["commutator"] = votes["commutator"][1]
    outcomes = {name: bool(ok) for name, (ok, _) in votes.items()}
    if len(set(outcomes.values())) > 1:
        raise InconsistentClassification(
            f"PUN criteria disagree: {outcomes}", residuals["commutator"]
        )
    pun = outcomes["commutator"]

    csgs = is_csgs(state, tol)
    residuals["csgs_offdiag"] = csgs.offdiag
    residuals["csgs_mismatch"] = csgs.mismatch

    gauge = False
    if classical:
        certificates["sigma_R"] = _noise_covariance(cov)
    if pun:
        U, D = orthosymplectic_diagonalize(cov, tol)
        certificates["U"] = U
        certificates["D"] = D
        cert = gauge_certificate(state, tol)
        certificates["K"] = cert.K
        certificates["K_min_eig"] = cert.min_eig
        certificates["K_degenerate"] = cert.degenerate
        gauge = True
    if csgs:
        certificates["N"] = csgs.N

    chain = (not csgs or pun) and (not pun or classical.ok)
    if not chain:
        raise InconsistentClassification(
            f"implication chain violated: csgs={csgs.ok}, pun={pun}, classical={classical.ok}"
        )
    return ClassificationReport(
        is_gaussian=True,
        is_classical=classical.ok,
        is_pun=pun,
        is_csgs=csgs.ok,
        is_gauge_invariant=gauge,
        nonzero_mean=nonzero_mean,
        residuals=residuals,
        certificates=certificates,
    )
