"""End-to-end checks of the exact algebra and the coupled-oscillator benchmark.

These run the full verification grids and long integrations; ``pytest -m "not slow"`` skips them.
"""

import math

import numpy as np
import pytest

from hybridmoments.dynamics import IntegratorConfig, SimState, integrate, sector_series
from hybridmoments.hamiltonian import generate_eom
from hybridmoments.moments.types import BracketKind, SystemSignature
from hybridmoments.oracle.identities import verify_reordering_identities
from hybridmoments.oracle.suites import (
    bracket_grid_report,
    jacobi_report,
    lemma_report,
    verify_harmonic_decoupling,
)
from hybridmoments.oscillator import (
    OscillatorParams,
    analytic_centroid,
    analytic_moment,
    conservation_residual,
    hybrid_floor,
    index_to_key,
    max_uncertainty_bound,
    uncertainty_functions,
)
from hybridmoments.oscillator.bounds import BOUND_TOLERANCE, CONSERVATION_TOLERANCE

pytestmark = pytest.mark.slow

SPLIT = SystemSignature(1, 1)
BEATS = OscillatorParams(9, 8)
THREE_TWO = OscillatorParams.from_frequencies(3, 2)
MOMENTS = {
    (0, 0, 2, 0): 1.0,
    (0, 0, 0, 2): 1.0,
    (0, 0, 1, 1): 0.0,
    (2, 0, 0, 0): 0.3,
    (0, 2, 0, 0): 0.2,
    (1, 1, 0, 0): -0.05,
    (1, 0, 1, 0): 0.1,
    (0, 1, 0, 1): -0.1,
}


def simulate(params, centroids, moments, t_end, step=1e-3, stride=1):
    system = generate_eom(params.hamiltonian(), SPLIT, BracketKind.HYBRID, 2)
    initial = dict(zip(system.layout[:4], centroids))
    initial.update({index_to_key(index): value for index, value in moments.items()})
    trajectory = integrate(
        system, SimState.from_mapping(system, initial), IntegratorConfig(t_end, step=step, output_stride=stride), 1.0
    )
    return system, trajectory


def test_full_bracket_grid_matches_oracle():
    report = bracket_grid_report()
    assert report.passed, report.render()


def test_reordering_identities_up_to_four():
    report = verify_reordering_identities(4)
    assert report.passed, report.render()


def test_centroid_lemma_up_to_four():
    report = lemma_report(4)
    assert report.passed, report.render()


def test_jacobi_for_every_kind():
    report = jacobi_report(list(BracketKind), 3)
    assert report.passed, report.render()


def test_harmonic_decoupling_at_order_four():
    hamiltonian = THREE_TWO.hamiltonian()
    for sig in (SystemSignature(0, 2), SPLIT, SystemSignature(2, 0)):
        result = verify_harmonic_decoupling(hamiltonian, sig, 4)
        assert result.passed, result.render()


def test_beating_centroids_follow_normal_modes():
    centroids = (1.0, 0.0, 2.0, 0.0)
    _, trajectory = simulate(BEATS, centroids, {}, 30.0, stride=10)
    expected = analytic_centroid(trajectory.times, centroids, BEATS)
    assert np.max(np.abs(trajectory.values[:, :4] - expected)) < 1e-6


def test_second_order_moments_follow_closed_form():
    system, trajectory = simulate(THREE_TWO, (0.5, 0.0, -0.5, 0.2), MOMENTS, 10.0, stride=20)
    moment_columns = list(enumerate(system.layout))[4:]
    assert len(moment_columns) == 10
    for column, key in moment_columns:
        expected = analytic_moment(trajectory.times, key, MOMENTS, THREE_TWO)
        assert np.max(np.abs(trajectory.values[:, column] - expected)) < 1e-6, key.render()


def test_uncertainty_exchange_between_sectors():
    moments = {(0, 0, 2, 0): 1.0, (0, 0, 0, 2): 1.0, (0, 0, 1, 1): 0.0}
    u0 = 1.0
    _, trajectory = simulate(THREE_TWO, (0.0, 0.0, 0.0, 0.0), moments, 2 * math.pi, stride=5)
    u_c, u_q = sector_series(trajectory, SPLIT)
    assert u_q[0] == pytest.approx(u0)
    assert u_c[0] == 0.0
    assert np.min(u_q) < u0
    assert np.max(u_c) > 0.0
    assert np.min(u_c + u_q) >= hybrid_floor(u0) - 1e-9


def test_beating_with_small_quantum_spread_respects_bounds():
    c0020 = c0002 = 1e-5
    u0 = c0020 * c0002
    moments = {(0, 0, 2, 0): c0020, (0, 0, 0, 2): c0002}
    system, trajectory = simulate(BEATS, (1.0, 0.0, 2.0, 0.0), moments, 30.0)

    for column, key in list(enumerate(system.layout))[4:]:
        expected = analytic_moment(trajectory.times, key, moments, BEATS)
        assert np.max(np.abs(trajectory.values[:, column] - expected)) < 1e-6, key.render()

    u_c, u_q = sector_series(trajectory, SPLIT)
    assert np.max(np.abs(conservation_residual(u_c, u_q, u0))) < CONSERVATION_TOLERANCE * u0 * u0
    low = u0 * (1 - BOUND_TOLERANCE)
    high = max_uncertainty_bound(BEATS, u0) * (1 + BOUND_TOLERANCE)
    assert low <= np.max(u_c) <= high
    assert low <= np.max(u_q) <= high
    assert np.min(u_c + u_q) >= hybrid_floor(u0) * (1 - 1e-6)

    expected_c, expected_q, _ = uncertainty_functions(trajectory.times, u0, BEATS)
    np.testing.assert_allclose(u_c, expected_c, rtol=0, atol=1e-6 * u0)
    np.testing.assert_allclose(u_q, expected_q, rtol=0, atol=1e-6 * u0)


def test_rk4_error_shrinks_sixteenfold_when_step_halves():
    centroids = (1.0, 0.0, 2.0, 0.0)
    errors = []
    for step in (0.02, 0.01):
        _, trajectory = simulate(BEATS, centroids, {}, 5.0, step=step)
        expected = analytic_centroid(trajectory.times[-1:], centroids, BEATS)[0]
        errors.append(np.max(np.abs(trajectory.values[-1, :4] - expected)))
    assert 12.0 < errors[0] / errors[1] < 20.0


def test_commensurate_frequencies_return_after_full_period():
    centroids = (1.0, -0.5, 2.0, 0.25)
    _, trajectory = simulate(THREE_TWO, centroids, MOMENTS, 2 * math.pi)
    assert trajectory.times[-1] == pytest.approx(2 * math.pi)
    np.testing.assert_allclose(trajectory.values[-1], trajectory.values[0], atol=1e-6)
