"""Seeded generators for unitaries, symplectic maps and class-targeted states.

Every generator is a pure function of its :class:`GenSpec`.  Random numbers
come from numpy's Philox counter-based bit generator seeded with
``GenSpec.seed``; the draw order inside each function is part of the
contract (see ``STREAM_VERSION``) because golden tests depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import GaussianState
from .symplectic import embed_complex, standard_symplectic_form

STREAM_VERSION = "philox4x64-v1"

CLASSES = ("GS", "CGS", "PUN", "CSGS", "PURE")


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one draw.

    ``scale`` bounds the spread of symplectic eigenvalues, photon numbers and
    squeezing.  ``squeeze`` forces a squeezing factor ``e^r`` on the first
    mode of GS/PURE states (and caps their symplectic eigenvalues at
    ``squeeze / 2``), which makes them non-classical whenever ``squeeze > 1``.
    ``identity`` forces all orthosymplectic factors to ``I`` and all squeezing
    to zero (debugging aid).
    """

    seed: int
    n: int
    class_tag: str = "GS"
    scale: float = 4.0
    squeeze: float | None = None
    displaced: bool = True
    identity: bool = False

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"mode count must be a positive integer, got {self.n!r}")
        if not self.scale >= 1:
            raise ValueError(f"scale must be >= 1, got {self.scale!r}")
        tag = str(self.class_tag).upper()
        if tag not in CLASSES:
            raise ValueError(f"unknown class {self.class_tag!r}; expected one of {CLASSES}")
        object.__setattr__(self, "class_tag", tag)
        if self.squeeze is not None and not self.squeeze >= 1:
            raise ValueError(f"squeeze factor must be >= 1, got {self.squeeze!r}")


def _rng(spec: GenSpec) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(spec.seed) % 2**64))


def _haar(rng, n):
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    phases = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * phases


def random_unitary(spec: GenSpec) -> np.ndarray:
    """Haar-random ``n x n`` unitary (Ginibre + QR with phase fix)."""
    return _haar(_rng(spec), spec.n)


def _symplectic(rng, spec):
    n = spec.n
    O1 = embed_complex(_haar(rng, n))
    O2 = embed_complex(_haar(rng, n))
    half = 0.5 * np.log(spec.scale)
    r = rng.uniform(-half, half, n)
    if spec.squeeze is not None:
        r[0] = np.log(spec.squeeze)
    if spec.identity:
        return np.eye(2 * n)
    return O1 @ np.diag(np.exp(np.concatenate([r, -r]))) @ O2


def random_symplectic(spec: GenSpec) -> np.ndarray:
    """Random symplectic ``O1 (diag(e^r) + diag(e^-r)) O2`` with orthosymplectic ``O_i``."""
    return _symplectic(_rng(spec), spec)


def random_state(spec: GenSpec) -> GaussianState:
    """A state drawn from the class named by ``spec.class_tag``.

    GS/PURE: ``M^T (D + D) M`` for random symplectic ``M`` (``D = 1/2`` for PURE).
    CGS: ``I/2 + 2 J^T Sigma J`` with ``Sigma = G^T G``.
    PUN: ``embed_complex(X)`` with Hermitian ``X`` of spectrum in ``[1/2, scale]``.
    CSGS: ``I/2 + 2 (diag N + diag N)`` with ``N`` in ``[0, scale]``.
    """
    rng = _rng(spec)
    n = spec.n
    tag = spec.class_tag
    if tag in ("GS", "PURE"):
        M = _symplectic(rng, spec)
        top = spec.scale if spec.squeeze is None else min(spec.scale, spec.squeeze / 2)
        d = rng.uniform(0.5, max(top, 0.5), n)
        if tag == "PURE":
            d = np.full(n, 0.5)
        cov = M.T @ np.diag(np.concatenate([d, d])) @ M
    elif tag == "CGS":
        G = rng.standard_normal((2 * n, 2 * n))
        sigma = G.T @ G
        sigma *= spec.scale * rng.uniform(0.2, 1.0) / np.linalg.norm(sigma, 2)
        J = standard_symplectic_form(n)
        cov = 0.5 * np.eye(2 * n) + 2 * J.T @ sigma @ J
    elif tag == "PUN":
        V = _haar(rng, n)
        x = rng.uniform(0.5, spec.scale, n)
        cov = embed_complex((V * x) @ V.conj().T)
    else:
        N = rng.uniform(0.0, spec.scale, n)
        cov = 0.5 * np.eye(2 * n) + 2 * np.diag(np.concatenate([N, N]))
    mean = np.zeros(n, dtype=complex)
    if spec.displaced:
        mean = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)
    cov = (cov + cov.T) / 2
    return GaussianState(mean, cov, label=f"{tag.lower()}-n{n}-seed{spec.seed}")
