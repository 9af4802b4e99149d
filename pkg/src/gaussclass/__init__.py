"""Gaussian-state classification, Williamson and (mu, A, Lambda) conversions."""

__version__ = "0.1.0"

from .alambda import (
    ALambdaParams,
    c_normalization,
    from_covariance,
    generating_function,
    m_matrix,
    passive_transform,
    to_covariance,
    validate_params,
)
from .classical import (
    PFunctionForm,
    classical_covariance,
    p_density,
    quantum_covariance,
    table_density,
    table_form,
)
from .classify import ClassificationReport, classify, gauge_certificate, is_classical, is_csgs, is_pun
from .errors import *  # noqa: F401,F403
from .randgen import GenSpec, random_state, random_symplectic, random_unitary
from .state import (
    ClassicalNoise,
    GaussianState,
    apply_passive,
    apply_symplectic,
    characteristic_function,
    displace,
    gaussian_average,
    validate,
)
from .symplectic import (
    Tolerances,
    embed_complex,
    extract_complex,
    hermitian_psd_check,
    is_orthosymplectic,
    is_symplectic,
    j_commutant_split,
    standard_symplectic_form,
)
from .williamson import (
    WilliamsonDecomposition,
    orthosymplectic_diagonalize,
    symplectic_eigenvalues,
    thermal_parameters,
    williamson_decompose,
)
