import math
from fractions import Fraction

import numpy as np
import pytest

from hybridmoments.dynamics import (
    IntegrationMethod,
    IntegratorConfig,
    SimState,
    compile_rhs,
    energy_series,
    evaluate_rhs,
    integrate,
    sector_series,
    uncertainties,
)
from hybridmoments.dynamics.integrator import MIN_STEP, _step_underflows, integrate_rkf45
from hybridmoments.errors import ConfigError, IntegrationError
from hybridmoments.hamiltonian import PolyHamiltonian, generate_eom
from hybridmoments.moments.types import BracketKind, CentroidSymbol, MomentKey, SystemSignature

SPLIT = SystemSignature(1, 1)
ONE_DOF = SystemSignature(0, 1)
Q1, P1 = CentroidSymbol.position(1), CentroidSymbol.momentum(1)
Q2 = CentroidSymbol.position(2)


@pytest.fixture(scope="module")
def oscillator_system():
    hamiltonian = PolyHamiltonian.coupled_oscillator(Fraction(17, 2), Fraction(1, 2))
    return generate_eom(hamiltonian, SPLIT, BracketKind.HYBRID, 2)


def harmonic_system(n_max=2):
    hamiltonian = PolyHamiltonian.from_mapping({((0, 2),): Fraction(1, 2), ((2, 0),): Fraction(1, 2)}, 1)
    return generate_eom(hamiltonian, ONE_DOF, BracketKind.QUANTUM, n_max)


def test_method_parsing():
    assert IntegrationMethod.parse("RK4") is IntegrationMethod.RK4
    assert IntegrationMethod.parse("rk45-adaptive") is IntegrationMethod.RK45
    with pytest.raises(ConfigError):
        IntegrationMethod.parse("euler")


@pytest.mark.parametrize(
    "kwargs",
    [{"t_end": -1.0}, {"t_end": math.inf}, {"t_end": 1.0, "step": 0.0}, {"t_end": 1.0, "rtol": 0.0}, {"t_end": 1.0, "output_stride": 0}],
)
def test_integrator_config_validation(kwargs):
    with pytest.raises(ConfigError):
        IntegratorConfig(**kwargs)


def test_sparse_initial_state(oscillator_system):
    key = MomentKey.of((1, 1), (0, 0))
    state = SimState.from_mapping(oscillator_system, {Q1: 1.0, key: 0.5})
    assert state.value(Q1) == 1.0
    assert state.value(key) == 0.5
    assert state.value(Q2) == 0.0
    with pytest.raises(ConfigError):
        SimState.from_mapping(oscillator_system, {MomentKey.of((1, 1)): 0.5})
    with pytest.raises(ConfigError):
        SimState.from_mapping(oscillator_system, {MomentKey.of((3, 0), (0, 0)): 0.5})


def test_evaluate_rhs_examples(oscillator_system):
    qp = MomentKey.of((1, 1), (0, 0))
    state = SimState.from_mapping(oscillator_system, {qp: 0.5, MomentKey.of((0, 0), (2, 0)): 0.7, Q2: -0.3})
    values = evaluate_rhs(oscillator_system, state, 1.0)
    assert values[oscillator_system.index_of(MomentKey.of((2, 0), (0, 0)))] == pytest.approx(1.0)
    assert values[oscillator_system.index_of(P1)] == pytest.approx(0.15)


def test_free_particle_momentum_spread_is_constant():
    free = PolyHamiltonian.from_mapping({((0, 2),): Fraction(1, 2)}, 1)
    system = generate_eom(free, ONE_DOF, BracketKind.QUANTUM, 3)
    state = SimState(0.0, np.linspace(0.1, 0.9, system.size), system.layout)
    values = evaluate_rhs(system, state, 1.0)
    assert values[system.index_of(MomentKey.of((0, 2)))] == 0.0


def test_rest_point_is_fixed():
    system = harmonic_system(3)
    state = SimState(0.0, np.zeros(system.size), system.layout)
    assert not np.any(evaluate_rhs(system, state, 1.0))


def test_compiled_rhs_matches_symbolic_evaluation(oscillator_system):
    rng = np.random.default_rng(3)
    values = rng.normal(size=oscillator_system.size)
    state = SimState(0.0, values, oscillator_system.layout)
    assignment = state.as_assignment()
    expected = [rhs.evaluate(assignment, 0.7) for rhs in oscillator_system.rhs]
    np.testing.assert_allclose(compile_rhs(oscillator_system, 0.7)(0.0, values), expected, rtol=1e-12, atol=1e-12)


def test_misaligned_state_is_rejected(oscillator_system):
    other = harmonic_system()
    with pytest.raises(ValueError):
        evaluate_rhs(oscillator_system, SimState(0.0, np.zeros(other.size), other.layout), 1.0)


def test_rk4_harmonic_oscillator_returns_after_one_period():
    system = harmonic_system()
    initial = SimState.from_mapping(system, {Q1: 1.0})
    trajectory = integrate(system, initial, IntegratorConfig(t_end=2 * math.pi, step=1e-3), 1.0)
    assert trajectory.final.time == 2 * math.pi
    assert abs(trajectory.final.value(Q1) - 1.0) < 1e-8
    assert abs(trajectory.final.value(P1)) < 1e-8


def test_rkf45_tracks_the_cosine_solution():
    system = harmonic_system()
    initial = SimState.from_mapping(system, {Q1: 1.0})
    cfg = IntegratorConfig(t_end=5.0, method="rk45", step=0.1)
    trajectory = integrate(system, initial, cfg, 1.0)
    np.testing.assert_allclose(trajectory.column(Q1), np.cos(trajectory.times), atol=1e-7)
    assert trajectory.accepted_steps > 0
    assert trajectory.final.time == 5.0


def test_step_underflow_is_relative_to_time():
    assert _step_underflows(1e6, 1e-12)
    assert not _step_underflows(1e6, 1e-6)
    assert not _step_underflows(1.0, 1e-12)
    assert _step_underflows(0.0, MIN_STEP / 2)


def test_rkf45_stops_when_steps_no_longer_advance_time():
    def rough(t, y):
        return np.array([0.0 if t < 1e6 else math.sin(1e12 * t)])

    cfg = IntegratorConfig(t_end=2e6, method="rk45", step=1.0, max_steps=10_000)
    with pytest.raises(IntegrationError, match="underflow"):
        integrate_rkf45(rough, np.zeros(1), cfg.t_end, cfg)


def test_zero_length_integration_returns_initial_state():
    system = harmonic_system()
    initial = SimState.from_mapping(system, {Q1: 0.25})
    for method in IntegrationMethod:
        trajectory = integrate(system, initial, IntegratorConfig(t_end=0.0, method=method), 1.0)
        assert len(trajectory) == 1
        np.testing.assert_array_equal(trajectory.final.values, initial.values)


def test_output_stride_keeps_first_and_last_sample():
    system = harmonic_system()
    initial = SimState.from_mapping(system, {Q1: 1.0})
    trajectory = integrate(system, initial, IntegratorConfig(t_end=1.0, step=0.1, output_stride=3), 1.0)
    np.testing.assert_allclose(trajectory.times, [0.0, 0.3, 0.6, 0.9, 1.0])
    assert trajectory.times[-1] == 1.0


def test_nonfinite_initial_state_fails():
    system = harmonic_system()
    initial = SimState.from_mapping(system, {Q1: math.nan})
    with pytest.raises(IntegrationError):
        integrate(system, initial, IntegratorConfig(t_end=1.0), 1.0)


def test_blow_up_is_reported():
    runaway = PolyHamiltonian.from_mapping({((0, 2),): Fraction(1, 2), ((4, 0),): -1}, 1)
    system = generate_eom(runaway, ONE_DOF, BracketKind.CLASSICAL, 2)
    initial = SimState.from_mapping(system, {Q1: 10.0})
    with pytest.raises(IntegrationError):
        integrate(system, initial, IntegratorConfig(t_end=10.0, step=0.01), 0.0)


def test_uncertainty_examples(oscillator_system):
    x2, k2, xk = MomentKey.of((0, 0), (2, 0)), MomentKey.of((0, 0), (0, 2)), MomentKey.of((0, 0), (1, 1))
    ground = SimState.from_mapping(oscillator_system, {x2: 0.5, k2: 0.5, xk: 0.0})
    u_c, u_q = uncertainties(ground, SPLIT)
    assert u_q == pytest.approx(0.25)
    assert u_c == 0.0
    degenerate = SimState.from_mapping(oscillator_system, {x2: 1.0, k2: 1.0, xk: 1.0})
    assert uncertainties(degenerate, SPLIT).U_q == 0.0


def test_harmonic_energy_is_conserved(oscillator_system):
    values = {Q1: 1.0, Q2: 2.0, MomentKey.of((0, 0), (2, 0)): 0.3, MomentKey.of((0, 0), (0, 2)): 0.4}
    initial = SimState.from_mapping(oscillator_system, values)
    trajectory = integrate(oscillator_system, initial, IntegratorConfig(t_end=3.0, step=1e-3, output_stride=100), 1.0)
    energies = energy_series(trajectory, oscillator_system, 1.0)
    np.testing.assert_allclose(energies, energies[0], rtol=1e-10)
    u_c, u_q = sector_series(trajectory, SPLIT)
    assert u_c[0] == 0.0
    assert u_q[0] == pytest.approx(0.12)


def test_higher_orders_do_not_feed_back_into_second_order():
    hamiltonian = PolyHamiltonian.coupled_oscillator(Fraction(17, 2), Fraction(1, 2))
    values = {Q1: 1.0, MomentKey.of((0, 0), (2, 0)): 0.3, MomentKey.of((0, 0), (0, 2)): 0.4}
    cfg = IntegratorConfig(t_end=1.0, step=1e-3, output_stride=50)
    low = generate_eom(hamiltonian, SPLIT, BracketKind.HYBRID, 2)
    high = generate_eom(hamiltonian, SPLIT, BracketKind.HYBRID, 4)
    low_run = integrate(low, SimState.from_mapping(low, values), cfg, 1.0)
    high_run = integrate(high, SimState.from_mapping(high, values), cfg, 1.0)
    for symbol in low.layout:
        np.testing.assert_allclose(high_run.column(symbol), low_run.column(symbol), atol=1e-10)
