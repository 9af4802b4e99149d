import numpy as np
import pytest

import fock_oracle as fo
from gaussclass.alambda import (
    ALambdaParams,
    c_normalization,
    from_covariance,
    generating_function,
    m_matrix,
    mean_from_mu,
    passive_transform,
    to_covariance,
    validate_params,
)
from gaussclass.errors import InvalidParams, InvalidState, SingularMeanMap
from gaussclass.randgen import CLASSES, GenSpec, random_state, random_unitary
from gaussclass.state import GaussianState, apply_passive
from gaussclass.symplectic import standard_symplectic_form

CUTOFF = 40
SQUEEZE_R = 0.5 * np.log(2)


def _probes(count, seed, radius=0.8):
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0, 1, (count, 2)))
    phase = rng.uniform(0, 2 * np.pi, (count, 2))
    return r * np.exp(1j * phase)


def test_m_matrix_examples():
    assert np.allclose(m_matrix([[0]], [[0]]), np.eye(2))
    assert np.allclose(m_matrix([[-1 / 6]], [[0]]), np.diag([4 / 3, 2 / 3]))
    assert np.allclose(m_matrix([[0]], [[0.5]]), 0.5 * np.eye(2))


@pytest.mark.parametrize(
    "A, Lam, c",
    [(0, 0, 1.0), (0, 0.5, 0.5), (-1 / 6, 0, np.sqrt(8 / 9)), (0.25j, 0, np.sqrt(0.75))],
)
def test_c_normalization_examples(A, Lam, c):
    assert c_normalization([[A]], [[Lam]]) == pytest.approx(c, rel=1e-14)


def test_thermal_conversion():
    params = from_covariance(GaussianState.thermal(1.0))
    assert np.allclose(params.A, 0, atol=1e-15)
    assert np.allclose(params.Lambda, [[0.5]])
    assert c_normalization(params.A, params.Lambda) == pytest.approx(0.5)
    assert generating_function(params, [1], [1]) == pytest.approx(0.5 * np.exp(0.5))


def test_squeezed_conversion():
    params = from_covariance(GaussianState(np.zeros(1), np.diag([1.0, 0.25])))
    assert np.allclose(params.A, [[-1 / 6]])
    assert np.allclose(params.Lambda, 0, atol=1e-15)
    back = to_covariance(ALambdaParams(np.zeros(1), [[-1 / 6]], [[0]]))
    assert np.allclose(back.cov, np.diag([1.0, 0.25]))


def test_coherent_state_has_only_a_mean():
    params = from_covariance(GaussianState.coherent(0.3))
    assert np.allclose(params.A, 0) and np.allclose(params.Lambda, 0)
    assert np.allclose(params.mu, [0.3])


def _sample_states(count, seed0=0):
    for k in range(count):
        tag = CLASSES[k % len(CLASSES)]
        yield random_state(GenSpec(seed0 + k, 1 + k % 4, tag))


def test_roundtrip_and_bounds():
    for state in _sample_states(500):
        params = from_covariance(state)
        report = validate_params(params.A, params.Lambda)
        assert report.valid
        assert report.normA < 0.5 and report.normLambda < 1
        back = to_covariance(params)
        assert np.linalg.norm(back.cov - state.cov) <= 1e-10 * np.linalg.norm(state.cov)
        assert np.linalg.norm(back.mean - state.mean) <= 1e-10 * (1 + np.linalg.norm(state.mean))


@pytest.mark.parametrize("seed", range(50))
def test_pun_iff_A_vanishes(seed):
    tag = ["PUN", "CSGS", "GS", "PURE"][seed % 4]
    state = random_state(GenSpec(seed, 1 + seed % 3, tag))
    params = from_covariance(state)
    J = standard_symplectic_form(state.n)
    commutes = np.linalg.norm(state.cov @ J - J @ state.cov) <= 1e-9
    assert commutes == (np.linalg.norm(params.A) <= 1e-9)
    if tag in ("PUN", "CSGS"):
        assert commutes


@pytest.mark.parametrize("seed", range(30))
def test_inverse_identity(seed):
    # (I/2 + S)^{-1} = M(-A, Lambda) and J^T M(-A, Lambda) J = M(A, Lambda)
    state = random_state(GenSpec(seed, 1 + seed % 4))
    params = from_covariance(state)
    I = np.eye(2 * state.n)
    J = standard_symplectic_form(state.n)
    lhs = np.linalg.inv(0.5 * I + state.cov)
    assert np.allclose(lhs, m_matrix(-params.A, params.Lambda), atol=1e-12)
    assert np.allclose(J.T @ m_matrix(-params.A, params.Lambda) @ J, m_matrix(params.A, params.Lambda))


def test_zero_mean_gives_zero_mu():
    state = random_state(GenSpec(2, 3, displaced=False))
    assert np.allclose(from_covariance(state).mu, 0)


@pytest.mark.parametrize("seed", range(20))
def test_passive_transform_commutes_with_conversion(seed):
    n = 1 + seed % 3
    state = random_state(GenSpec(seed, n))
    U = random_unitary(GenSpec(seed + 50, n))
    a = passive_transform(from_covariance(state), U)
    b = from_covariance(apply_passive(state, U))
    assert np.allclose(a.A, b.A, atol=1e-12)
    assert np.allclose(a.Lambda, b.Lambda, atol=1e-12)
    assert np.allclose(a.mu, b.mu, atol=1e-12)
    assert c_normalization(a.A, a.Lambda) == pytest.approx(c_normalization(b.A, b.Lambda))


def test_validate_params_rejects_large_A():
    report = validate_params([[0.6]], [[0]])
    assert not report.valid and report.normA == pytest.approx(0.6)
    with pytest.raises(InvalidParams):
        to_covariance(ALambdaParams(np.zeros(1), [[0.6]], [[0]]))


def test_validate_params_rejects_large_lambda():
    assert not validate_params([[0]], [[1.2]]).valid
    assert not validate_params([[0]], [[-0.1]]).valid


def test_from_covariance_rejects_invalid_state():
    with pytest.raises(InvalidState):
        from_covariance(GaussianState(np.zeros(1), 0.3 * np.eye(2)))


def test_mean_map_near_singular():
    # |A| -> 1/2 is infinite squeezing: M(A, 0) has eigenvalues 1 +- 2|A|
    params = ALambdaParams(np.ones(1), [[0.5 - 1e-14]], [[0]])
    with pytest.raises(SingularMeanMap):
        mean_from_mu(params)


def _oracle_states():
    alpha = 0.3
    return {
        "vacuum": (
            GaussianState.vacuum(),
            fo.pure_truncated(fo.coherent_amplitudes(0, CUTOFF), CUTOFF),
        ),
        "coherent": (
            GaussianState.coherent(alpha),
            fo.pure_truncated(fo.coherent_amplitudes(alpha, CUTOFF), CUTOFF),
        ),
        "thermal": (GaussianState.thermal(1.0), fo.thermal_truncated(np.log(2), CUTOFF)),
        "squeezed": (
            to_covariance(ALambdaParams(np.zeros(1), [[-1 / 6]], [[0]])),
            fo.pure_truncated(fo.squeezed_vacuum_amplitudes(SQUEEZE_R, CUTOFF), CUTOFF),
        ),
    }


@pytest.mark.parametrize("seed, name", list(enumerate(["vacuum", "coherent", "thermal", "squeezed"])))
def test_generating_function_matches_fock_oracle(seed, name):
    state, truncated = _oracle_states()[name]
    params = from_covariance(state)
    for u, v in _probes(10, seed):
        got = generating_function(params, [u], [v])
        assert got == pytest.approx(fo.oracle_generating_function(truncated, [u], [v]), abs=1e-10)


def test_generating_function_two_modes():
    state = GaussianState(np.zeros(2), np.diag([1.5, 1.0, 1.5, 0.25]))
    state_b = to_covariance(ALambdaParams(np.zeros(2), np.diag([0, -1 / 6]), np.diag([0.5, 0])))
    assert np.allclose(state.cov, state_b.cov)
    truncated = fo.tensor(
        fo.thermal_truncated(np.log(2), 20),
        fo.pure_truncated(fo.squeezed_vacuum_amplitudes(SQUEEZE_R, 20), 20),
    )
    params = from_covariance(state)
    rng = np.random.default_rng(5)
    for _ in range(5):
        u = 0.5 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        v = 0.5 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        assert generating_function(params, u, v) == pytest.approx(
            fo.oracle_generating_function(truncated, u, v), abs=1e-9
        )


def _random_params(rng, n):
    """Valid (A, Lambda) from a random state, so M(A, Lambda) > 0 by construction."""
    seed = int(rng.integers(1 << 30))
    return from_covariance(random_state(GenSpec(seed, n, CLASSES[seed % len(CLASSES)], displaced=False)))


def test_generating_function_examples():
    vac = ALambdaParams(np.zeros(1), [[0]], [[0]])
    assert generating_function(vac, [0.3 + 0.2j], [-1.1j]) == pytest.approx(1)
    sq = ALambdaParams(np.zeros(1), [[-1 / 6]], [[0]])
    assert generating_function(sq, [1], [0]) == pytest.approx(np.sqrt(8 / 9) * np.exp(-1 / 6))
    assert generating_function(sq, [1], [0]) == pytest.approx(0.798071, abs=1e-6)


def test_passive_transform_examples():
    sq = ALambdaParams(np.zeros(1), [[-1 / 6]], [[0]])
    assert np.allclose(passive_transform(sq, np.eye(1)).A, sq.A)
    assert np.allclose(passive_transform(sq, [[1j]]).A, [[1 / 6]])
    thermal = ALambdaParams(np.zeros(1), [[0]], [[0.5]])
    for theta in np.linspace(0, 2 * np.pi, 7):
        assert np.allclose(passive_transform(thermal, [[np.exp(1j * theta)]]).Lambda, [[0.5]])


def test_downscaled_lambda_stays_valid():
    rng = np.random.default_rng(6)
    for t in (0, 0.25, 0.5, 0.75, 1):
        assert validate_params([[-1 / 6]], [[0.5 * t]]).valid
    for _ in range(200):
        params = _random_params(rng, int(rng.integers(1, 5)))
        for t in (0, 0.25, 0.5, 0.75, 1):
            assert validate_params(params.A, t * params.Lambda).valid


def test_j_conjugation_identity_random_params():
    rng = np.random.default_rng(4)
    for _ in range(200):
        params = _random_params(rng, int(rng.integers(1, 5)))
        J = standard_symplectic_form(params.n)
        lhs = J.T @ m_matrix(-params.A, params.Lambda) @ J
        assert np.allclose(lhs, m_matrix(params.A, params.Lambda), rtol=0, atol=1e-14)


def test_c_is_passive_invariant():
    rng = np.random.default_rng(3)
    for k in range(200):
        params = _random_params(rng, 1 + k % 4)
        U = random_unitary(GenSpec(k, params.n))
        moved = passive_transform(params, U)
        assert abs(c_normalization(params.A, params.Lambda) - c_normalization(moved.A, moved.Lambda)) <= 1e-12


def test_mean_map_is_invertible_both_directions():
    rng = np.random.default_rng(2)
    for k in range(50):
        params = _random_params(rng, 1 + k % 4)
        m = rng.standard_normal(params.n) + 1j * rng.standard_normal(params.n)
        state = GaussianState(m, to_covariance(params).cov)
        mu = from_covariance(state).mu
        back = mean_from_mu(ALambdaParams(mu, params.A, params.Lambda))
        assert np.allclose(back, m, atol=1e-10)
        assert np.allclose(mean_from_mu(ALambdaParams(np.zeros(params.n), params.A, params.Lambda)), 0)


def test_thermal_generating_function_against_oracle_unit_disk():
    params = from_covariance(GaussianState.thermal(1.0))
    truncated = fo.thermal_truncated(np.log(2), CUTOFF)
    for u, v in _probes(20, 11, radius=1.0):
        assert generating_function(params, [u], [v]) == pytest.approx(
            fo.oracle_generating_function(truncated, [u], [v]), abs=1e-8
        )


def test_conversion_examples_with_mean():
    params = from_covariance(GaussianState.vacuum())
    assert np.allclose(params.mu, 0) and np.allclose(params.A, 0) and np.allclose(params.Lambda, 0)
    params = from_covariance(GaussianState(np.ones(1), 1.5 * np.eye(2)))
    assert np.allclose(params.mu, [0.5]) and np.allclose(params.Lambda, [[0.5]])
    state = to_covariance(ALambdaParams([0.5], [[0]], [[0.5]]))
    assert np.allclose(state.mean, [1]) and np.allclose(state.cov, 1.5 * np.eye(2))
    state = to_covariance(ALambdaParams(np.zeros(1), [[0]], [[0]]))
    assert np.allclose(state.cov, 0.5 * np.eye(2))
    report = validate_params([[0]], [[0]])
    assert report.m_pd and report.normA == 0 and report.normLambda == 0
    report = validate_params([[0.6]], [[0]])
    assert not report.m_pd and report.min_eig == pytest.approx(-0.2)
