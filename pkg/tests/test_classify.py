import numpy as np
import pytest

from gaussclass.classify import (
    classify,
    gauge_certificate,
    is_classical,
    is_csgs,
    is_pun,
    pun_tests,
)
from gaussclass.errors import NotClassical, NotPUN
from gaussclass.randgen import CLASSES, GenSpec, random_state, random_unitary
from gaussclass.state import GaussianState, apply_passive
from gaussclass.symplectic import embed_complex

MIX_COV = np.array([[2.5, -2.0], [-2.0, 4.5]])
TWO_MODE_X = np.array([[1.5, 0.5j], [-0.5j, 1.5]])


def _state(cov, mean=None):
    cov = np.asarray(cov, dtype=float)
    return GaussianState(np.zeros(cov.shape[0] // 2) if mean is None else mean, cov)


def test_vacuum_report():
    report = classify(GaussianState.vacuum())
    assert all(report.flags[k] for k in ("is_gaussian", "is_classical", "is_pun", "is_csgs"))
    assert not report.nonzero_mean
    cert = report.certificates
    assert np.allclose(cert["U"], np.eye(1)) and np.allclose(cert["D"], 0.5)
    assert np.isinf(cert["s"][0]) and cert["nbar"][0] == 0
    assert np.allclose(cert["K"], 0) and cert["K_degenerate"]


def test_classical_but_not_pun_example():
    report = classify(_state(MIX_COV))
    assert report.is_gaussian and report.is_classical
    assert not report.is_pun and not report.is_csgs and not report.is_gauge_invariant
    assert "sigma_R" in report.certificates and "U" not in report.certificates


def test_squeezed_example():
    report = classify(_state(np.diag([1.0, 0.25])))
    assert report.is_gaussian
    assert not (report.is_classical or report.is_pun or report.is_csgs)
    assert np.allclose(report.certificates["A"], [[-1 / 6]])
    assert report.residuals["classicality_min_eig"] == pytest.approx(-0.25)


def test_invalid_state_report_is_all_false():
    report = classify(_state(0.3 * np.eye(2)))
    assert not any(v for k, v in report.flags.items() if k != "nonzero_mean")
    assert report.certificates == {}


def test_nonzero_mean_does_not_change_class():
    a = classify(_state(MIX_COV))
    b = classify(_state(MIX_COV, mean=[1 + 2j]))
    assert b.nonzero_mean
    for key in ("is_gaussian", "is_classical", "is_pun", "is_csgs"):
        assert a.flags[key] == b.flags[key]


@pytest.mark.parametrize("seed", range(100))
def test_pun_criteria_agree(seed):
    tag = CLASSES[seed % len(CLASSES)]
    state = random_state(GenSpec(seed, 1 + seed % 4, tag))
    votes = pun_tests(state)
    assert len({bool(ok) for ok, _ in votes.values()}) == 1
    assert votes["commutator"][0] == bool(is_pun(state))


@pytest.mark.parametrize("seed", range(60))
def test_implication_chain(seed):
    tag = CLASSES[seed % len(CLASSES)]
    report = classify(random_state(GenSpec(seed, 1 + seed % 4, tag)))
    assert report.is_gaussian
    if report.is_csgs:
        assert report.is_pun
    if report.is_pun:
        assert report.is_classical and report.is_gauge_invariant
    assert report.is_gauge_invariant == report.is_pun


def test_gauge_certificate_examples():
    sigma, K = gauge_certificate(GaussianState.vacuum())
    assert np.allclose(sigma, 0) and np.allclose(K, 0)
    sigma, K = gauge_certificate(_state(1.5 * np.eye(2)))
    assert np.allclose(sigma, 0.5 * np.eye(2)) and np.allclose(K, [[0.5]])
    cert = gauge_certificate(_state(embed_complex(TWO_MODE_X)))
    assert np.allclose(cert.K, [[0.5, 0.25j], [-0.25j, 0.5]])
    assert np.allclose(np.linalg.eigvalsh(cert.K), [0.25, 0.75])
    assert not cert.degenerate


def test_gauge_certificate_errors():
    with pytest.raises(NotPUN):
        gauge_certificate(_state(MIX_COV))
    with pytest.raises(NotPUN):
        gauge_certificate(_state(np.diag([1.0, 0.25])))


@pytest.mark.parametrize("seed", range(20))
def test_gauge_matrix_spectrum_tracks_passive_spectrum(seed):
    # K = (X - I/2) / 2, so eig(K) = (D - 1/2) / 2
    state = random_state(GenSpec(seed, 1 + seed % 4, "PUN"))
    report = classify(state)
    D = report.certificates["D"]
    K_eigs = np.sort(np.linalg.eigvalsh(report.certificates["K"]))[::-1]
    assert np.allclose(K_eigs, (D - 0.5) / 2, atol=1e-12)


def test_classicality_predicate_examples():
    assert is_classical(GaussianState.thermal(0.3))
    assert is_classical(_state(MIX_COV))
    check = is_classical(_state(np.diag([2.0, 0.4])))
    assert not check and check.value == pytest.approx(-0.1)


def test_csgs_predicate_examples():
    check = is_csgs(GaussianState.thermal([1.0, 0.0]))
    assert check and np.allclose(check.N, [0.5, 0.0])
    assert not is_csgs(_state(embed_complex(TWO_MODE_X)))
    assert not is_csgs(_state(np.diag([1.5, 1.0])))


def test_hierarchy_is_strict():
    # GS not CGS, CGS not PUN, PUN not CSGS
    assert not classify(_state(np.diag([1.0, 0.25]))).is_classical
    report = classify(_state(MIX_COV))
    assert report.is_classical and not report.is_pun
    report = classify(_state(embed_complex(TWO_MODE_X)))
    assert report.is_pun and not report.is_csgs


@pytest.mark.parametrize("seed", range(40))
def test_single_mode_pun_is_csgs(seed):
    state = random_state(GenSpec(seed, 1, "PUN"))
    report = classify(state)
    assert report.is_pun and report.is_csgs


@pytest.mark.parametrize("seed", range(40))
def test_passive_conjugation_preserves_flags(seed):
    tag = CLASSES[seed % len(CLASSES)]
    n = 1 + seed % 4
    state = random_state(GenSpec(seed, n, tag))
    before = classify(state).flags
    after = classify(apply_passive(state, random_unitary(GenSpec(seed + 999, n)))).flags
    for key in ("is_gaussian", "is_classical", "is_pun", "is_gauge_invariant"):
        assert before[key] == after[key]


def test_not_classical_error_carries_residual():
    from gaussclass.classical import classical_covariance

    with pytest.raises(NotClassical) as info:
        classical_covariance(_state(np.diag([1.0, 0.25])))
    assert info.value.residual == pytest.approx(-0.25)


def test_predicate_residual_examples():
    check = is_pun(GaussianState.vacuum())
    assert check and check.value == 0
    assert is_pun(_state(embed_complex(TWO_MODE_X)))
    check = is_pun(_state(MIX_COV))
    assert not check and check.value > 1
    check = is_classical(_state(1.5 * np.eye(2)))
    assert check and check.value == pytest.approx(1)
    check = is_csgs(GaussianState.vacuum())
    assert check and np.allclose(check.N, 0)
