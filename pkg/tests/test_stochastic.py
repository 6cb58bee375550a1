import numpy as np
import pytest

from helpers import rel_err
from netcrit.criticality import tau_cycle_closed_form, tau_from_spectrum
from netcrit.errors import DegenerateModelError, InvalidParameterError
from netcrit.oracle import build_laplacian, pinv_trace_tau
from netcrit.spectra import circulant_eigenvalues
from netcrit.stochastic import (
    LINK_FAILURES,
    NEIGHBOR_SWITCHING,
    RANDOM_LINKS,
    AsymmetricRingSpec,
    StochasticRingModel,
    asymmetric_row,
    asymmetric_spectrum,
    expected_laplacian,
    tau_asymmetric_ring,
    tau_link_failures,
    tau_model,
    tau_neighbor_switching,
    tau_random_links,
)

EPS_GRID = [i / 10 for i in range(11)]


def oracle(spec):
    return pinv_trace_tau(build_laplacian(spec))


def test_expected_laplacian_rows():
    np.testing.assert_array_equal(expected_laplacian(StochasticRingModel(4, RANDOM_LINKS, q=1.0)), [3, -1, -1, -1])
    np.testing.assert_array_equal(expected_laplacian(StochasticRingModel(5, LINK_FAILURES, p=0.0)), [2, -1, 0, 0, -1])
    np.testing.assert_array_equal(expected_laplacian(StochasticRingModel(3, NEIGHBOR_SWITCHING)), [2, -1, -1])


@pytest.mark.parametrize("n", [3, 8, 31])
def test_expected_laplacian_rows_sum_to_zero(n):
    for model in (
        StochasticRingModel(n, RANDOM_LINKS, q=0.3),
        StochasticRingModel(n, LINK_FAILURES, p=0.6),
        StochasticRingModel(n, NEIGHBOR_SWITCHING),
    ):
        assert abs(expected_laplacian(model).sum()) < 1e-12


def test_oracle_rows_match_expected_laplacian():
    for model in (
        StochasticRingModel(7, RANDOM_LINKS, q=0.4),
        StochasticRingModel(7, LINK_FAILURES, p=0.25),
        StochasticRingModel(7, NEIGHBOR_SWITCHING),
    ):
        np.testing.assert_allclose(build_laplacian(model)[0], expected_laplacian(model), atol=1e-15)


@pytest.mark.parametrize("n, q, expected", [(5, 1.0, 8.0), (5, 0.5, 16.0), (11, 0.2, 100.0)])
def test_random_links(n, q, expected):
    value = tau_random_links(n, q)
    assert value.tau == pytest.approx(expected, rel=1e-12)
    assert rel_err(value.tau, oracle(StochasticRingModel(n, RANDOM_LINKS, q=q)).tau) < 1e-9


@pytest.mark.parametrize("n, p, expected", [(5, 0.0, 20.0), (5, 0.5, 40.0), (7, 0.3, 80.0)])
def test_link_failures(n, p, expected):
    value = tau_link_failures(n, p)
    assert value.tau == pytest.approx(expected, rel=1e-12)
    assert rel_err(value.tau, oracle(StochasticRingModel(n, LINK_FAILURES, p=p)).tau) < 1e-9


@pytest.mark.parametrize("n, expected", [(3, 4.0), (5, 16.0), (21, 400.0)])
def test_neighbor_switching(n, expected):
    value = tau_neighbor_switching(n)
    assert value.tau == pytest.approx(expected, rel=1e-12)
    assert rel_err(value.tau, oracle(StochasticRingModel(n, NEIGHBOR_SWITCHING)).tau) < 1e-9


def test_degenerate_models():
    with pytest.raises(DegenerateModelError):
        tau_random_links(5, 0.0)
    with pytest.raises(DegenerateModelError):
        tau_link_failures(5, 1.0)
    with pytest.raises(DegenerateModelError):
        StochasticRingModel(5, RANDOM_LINKS, q=0.0)


def test_invalid_model_parameters():
    with pytest.raises(InvalidParameterError):
        tau_random_links(5, 1.5)
    with pytest.raises(InvalidParameterError):
        tau_link_failures(5, -0.1)
    with pytest.raises(InvalidParameterError):
        tau_neighbor_switching(2)
    with pytest.raises(InvalidParameterError):
        StochasticRingModel(5, "gossip")
    with pytest.raises(InvalidParameterError):
        AsymmetricRingSpec(5, 1.2)


@pytest.mark.parametrize("n", range(3, 65))
def test_model_formula_matches_circulant_path(n):
    for model in (
        StochasticRingModel(n, RANDOM_LINKS, q=0.35),
        StochasticRingModel(n, LINK_FAILURES, p=0.45),
        StochasticRingModel(n, NEIGHBOR_SWITCHING),
    ):
        via_row = tau_from_spectrum(circulant_eigenvalues(expected_laplacian(model)))
        assert rel_err(tau_model(model).tau, via_row.tau) < 1e-9


def test_random_links_decreasing_in_q():
    taus = [tau_random_links(40, q).tau for q in np.linspace(0.05, 1.0, 20)]
    assert all(b < a for a, b in zip(taus, taus[1:]))


def test_link_failures_increasing_in_p():
    taus = [tau_link_failures(40, p).tau for p in np.linspace(0.0, 0.95, 20)]
    assert all(b > a for a, b in zip(taus, taus[1:]))


def test_asymmetric_row_and_dense_matrix():
    spec = AsymmetricRingSpec(3, 0.5)
    np.testing.assert_allclose(asymmetric_row(spec), [1.5, -1.0, -0.5])
    np.testing.assert_allclose(build_laplacian(spec)[0], [1.5, -1.0, -0.5])


@pytest.mark.parametrize("n", [3, 5, 8, 16, 33])
@pytest.mark.parametrize("eps", [0.0, 0.3, 1.0])
def test_asymmetric_spectrum_matches_circulant_row(n, eps):
    spec = AsymmetricRingSpec(n, eps)
    np.testing.assert_allclose(asymmetric_spectrum(spec), circulant_eigenvalues(asymmetric_row(spec)).flat(), atol=1e-12)


def test_asymmetric_examples():
    assert tau_asymmetric_ring(AsymmetricRingSpec(5, 1.0)).tau == pytest.approx(20.0, rel=1e-12)
    assert tau_asymmetric_ring(AsymmetricRingSpec(4, 0.0)).tau == pytest.approx(12.0, rel=1e-12)
    assert oracle(AsymmetricRingSpec(4, 0.0)).tau == pytest.approx(12.0, rel=1e-12)
    half = AsymmetricRingSpec(5, 0.5)
    assert rel_err(tau_asymmetric_ring(half).tau, oracle(half).tau) < 1e-9


@pytest.mark.parametrize("n", range(3, 65))
def test_asymmetric_symmetric_limit(n):
    assert rel_err(tau_asymmetric_ring(AsymmetricRingSpec(n, 1.0)).tau, tau_cycle_closed_form(n, 1).tau) < 1e-9


@pytest.mark.parametrize("n", range(3, 65))
def test_asymmetric_imaginary_residue(n):
    for eps in EPS_GRID:
        assert tau_asymmetric_ring(AsymmetricRingSpec(n, eps)).imag_residue < 1e-9


@pytest.mark.parametrize("n", range(18, 101))
def test_asymmetric_increasing_in_eps(n):
    taus = [tau_asymmetric_ring(AsymmetricRingSpec(n, e)).tau for e in EPS_GRID]
    assert all(b > a for a, b in zip(taus, taus[1:]))


@pytest.mark.parametrize("n", range(8, 18))
def test_asymmetric_peaks_before_symmetric_for_small_rings(n):
    # small rings peak at some eps < 1; the dense oracle agrees
    taus = [tau_asymmetric_ring(AsymmetricRingSpec(n, e)).tau for e in EPS_GRID]
    assert taus[-2] > taus[-1]
    assert taus[-2] == pytest.approx(oracle(AsymmetricRingSpec(n, 0.9)).tau, rel=1e-9)
