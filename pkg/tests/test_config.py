import json
from fractions import Fraction

import pytest

from hybridmoments.config import RunConfig
from hybridmoments.config.models import SignatureConfig, default_kind
from hybridmoments.errors import ConfigError
from hybridmoments.hamiltonian import PolyHamiltonian
from hybridmoments.moments.types import BracketKind, CentroidSymbol, MomentKey, SystemSignature
from hybridmoments.oscillator import OscillatorParams
from hybridmoments.presets import (
    HamiltonianPresetRegistry,
    HamiltonianResolver,
    MonomialSpec,
    ScenarioRegistry,
    SymbolResolver,
)


def oscillator_config(**overrides):
    data = {
        "signature": {"n_classical": 1, "n_quantum": 1, "hbar": 1.0},
        "hamiltonian": {"preset": "coupled_oscillator", "parameters": {"omega_sq": "17/2", "gamma": "1/2"}},
        "kind": "hybrid",
        "truncation_order": 2,
        "initial": {"centroids": {"q": 1.0, "x": 2.0}, "moments": {"d[0,0;2,0]": 0.5, "d[0,0;0,2]": 0.5}},
        "integrator": {"method": "rk4", "step": 0.001, "t_end": 1.0, "output_stride": 10},
    }
    data.update(overrides)
    return data


def test_registry_lists_packaged_presets():
    registry = HamiltonianPresetRegistry.load()
    names = [preset.name for preset in registry.presets]
    assert names[0] == "coupled_oscillator"
    assert {"harmonic_oscillator", "free_particle", "cubic_anharmonic", "quartic_anharmonic"} <= set(names)
    assert registry.get(" Coupled_Oscillator ") is registry.get("coupled_oscillator")
    assert registry.get("missing") is None


def test_coupled_oscillator_preset_matches_builder():
    preset = HamiltonianPresetRegistry.load().get("coupled_oscillator")
    assert preset.defaults == {"omega_sq": Fraction(17, 2), "gamma": Fraction(1, 2)}
    assert preset.build((2,)) == PolyHamiltonian.coupled_oscillator(Fraction(17, 2), Fraction(1, 2))
    built = preset.build((2,), {"omega_sq": "13/2", "gamma": "5/2"})
    assert built == OscillatorParams.from_frequencies(3, 2).hamiltonian()


def test_preset_rejects_unknown_parameter():
    preset = HamiltonianPresetRegistry.load().get("harmonic_oscillator")
    with pytest.raises(ConfigError, match="no parameter 'gamma'"):
        preset.parameter_values({"gamma": 1})


def test_registry_rejects_malformed_files(tmp_path):
    path = tmp_path / "presets.json"
    path.write_text(json.dumps({"name": "x"}), encoding="utf-8")
    with pytest.raises(ValueError):
        HamiltonianPresetRegistry.load(path)
    path = tmp_path / "presets_missing_dof.json"
    path.write_text(json.dumps([{"name": "x", "monomials": []}]), encoding="utf-8")
    with pytest.raises(ValueError, match="n_dof"):
        HamiltonianPresetRegistry.load(path)


def test_registries_store_lowercase_names(tmp_path):
    presets = tmp_path / "presets.json"
    entry = {"name": " Mixed_Case ", "n_dof": 1, "monomials": [{"exponents": [[0, 2]], "coefficient": "1/2"}]}
    presets.write_text(json.dumps([entry]), encoding="utf-8")
    registry = HamiltonianPresetRegistry.load(presets)
    assert [preset.name for preset in registry.presets] == ["mixed_case"]
    assert registry.get("MIXED_case") is registry.presets[0]
    assert HamiltonianPresetRegistry.load(presets) is registry

    scenarios = tmp_path / "scenarios.json"
    scenarios.write_text(json.dumps([{"name": "Slow_Beats", "omega1_sq": 9, "omega2_sq": 8}]), encoding="utf-8")
    loaded = ScenarioRegistry.load(scenarios)
    assert loaded.get("slow_beats").name == "slow_beats"
    assert not isinstance(loaded, HamiltonianPresetRegistry)

    unnamed = tmp_path / "unnamed.json"
    unnamed.write_text(json.dumps([{"omega1_sq": 9, "omega2_sq": 8}]), encoding="utf-8")
    with pytest.raises(ValueError, match="Scenario entry missing name"):
        ScenarioRegistry.load(unnamed)


def test_scenarios():
    registry = ScenarioRegistry.load()
    beats = registry.get("beats")
    assert beats.centroids == (1.0, 0.0, 2.0, 0.0)
    assert beats.params() == OscillatorParams(9, 8)
    exchange = registry.get("uncertainty_exchange")
    assert exchange.u0 == pytest.approx(1e-5)
    assert exchange.initial_moments[(0, 0, 1, 1)] == 0.0


def test_symbol_resolver_aliases():
    resolver = SymbolResolver(2, (("q", "p"), ("x", "k")))
    assert resolver.resolve("x") == CentroidSymbol.position(2)
    assert resolver.resolve("p1") == CentroidSymbol.momentum(1)
    assert resolver.resolve("d[1,0;1,0]") == MomentKey.of((1, 0), (1, 0))
    assert resolver.name_of(CentroidSymbol.momentum(2)) == "k"
    assert resolver.name_of(MomentKey.of((2, 0), (0, 0))) == "d[2,0;0,0]"
    with pytest.raises(ConfigError, match="known names: q, p, x, k"):
        resolver.resolve("y")
    with pytest.raises(ConfigError):
        SymbolResolver(1, (("q", "p"), ("x", "k")))


def test_hamiltonian_resolver_combines_preset_and_monomials():
    resolver = HamiltonianResolver(HamiltonianPresetRegistry.load())
    cubic = MonomialSpec(((3, 0),), "1/10")
    combined = resolver.resolve(1, (1,), "harmonic_oscillator", {"omega_sq": 4}, (cubic,))
    assert combined.name == "harmonic_oscillator"
    assert combined == PolyHamiltonian.from_mapping(
        {((0, 2),): Fraction(1, 2), ((2, 0),): 2, ((3, 0),): Fraction(1, 10)}, 1, "harmonic_oscillator"
    )
    extra = (MonomialSpec(((3, 0),), "lambda"),)
    custom = resolver.resolve(1, (1,), None, {"lambda": "1/10"}, (MonomialSpec(((0, 2),), "1/2"),) + extra)
    assert custom.name == "custom"
    assert custom == PolyHamiltonian.from_mapping({((0, 2),): Fraction(1, 2), ((3, 0),): Fraction(1, 10)}, 1, "custom")
    with pytest.raises(ConfigError, match="Unknown Hamiltonian preset"):
        resolver.resolve(1, (1,), "nope")
    with pytest.raises(ConfigError):
        resolver.resolve(2, (2,), "harmonic_oscillator")
    with pytest.raises(ConfigError):
        resolver.resolve(1, (1,))


def test_default_kind_follows_signature():
    assert default_kind(SystemSignature(1, 1)) is BracketKind.HYBRID
    assert default_kind(SystemSignature(0, 2)) is BracketKind.QUANTUM
    assert default_kind(SystemSignature(2, 0)) is BracketKind.CLASSICAL


def test_signature_shorthand():
    config = SignatureConfig.from_dict("1c1q")
    assert (config.n_classical, config.n_quantum, config.hbar) == (1, 1, 1.0)
    assert config.quantum_dofs == (2,)
    with pytest.raises(ConfigError):
        SignatureConfig.from_dict("two")


def test_run_config_parses_and_resolves_aliases():
    config = RunConfig.from_dict(oscillator_config())
    values = config.initial_values()
    assert values[CentroidSymbol.position(1)] == 1.0
    assert values[CentroidSymbol.position(2)] == 2.0
    assert values[MomentKey.of((0, 0), (2, 0))] == 0.5
    assert config.system_signature == SystemSignature(1, 1)
    assert config.integrator.output_stride == 10


def test_run_config_round_trip(tmp_path):
    config = RunConfig.from_dict(oscillator_config(output={"csv": "out.csv"}))
    assert RunConfig.from_dict(config.to_dict()) == config
    path = tmp_path / "run.json"
    config.dump(path)
    assert RunConfig.load(path) == config
    assert path.read_text(encoding="utf-8").endswith("}\n")


def test_custom_hamiltonian_round_trip():
    data = oscillator_config(
        signature="0c1q",
        hamiltonian={
            "parameters": {"lambda": 0.1},
            "monomials": [
                {"exponents": [[0, 2]], "coefficient": "1/2"},
                {"exponents": [[2, 2]], "coefficient": "lambda", "ordering": "symmetric"},
            ],
        },
        initial={"centroids": {"q1": 0.5}},
    )
    data.pop("kind")
    config = RunConfig.from_dict(data)
    assert config.kind is BracketKind.QUANTUM
    assert RunConfig.from_dict(config.to_dict()) == config
    assert config.build_hamiltonian().polynomial.max_hbar2_power == 1


@pytest.mark.parametrize(
    "overrides, message",
    [
        ({"initial": {"moments": {"d[2,0]": 1.0}}}, "degrees of freedom"),
        ({"initial": {"moments": {"d[0,0;3,0]": 1.0}}}, "order 3"),
        ({"initial": {"centroids": {"z": 1.0}}}, "Unknown centroid"),
        ({"truncation_order": 1}, "at least 2"),
        ({"kind": "semiclassical"}, "Unknown bracket kind"),
        ({"extra": {}}, "Unknown config sections"),
        ({"integrator": {"t_end": 1.0, "tolerance": 1}}, "Unknown integrator settings"),
        ({"integrator": {"step": 0.1}}, "t_end"),
        ({"hamiltonian": {"preset": "coupled_oscillator", "parameters": {"delta": 1}}}, "no parameter 'delta'"),
        ({"signature": {"n_classical": 0, "n_quantum": 0}}, "at least one degree of freedom"),
    ],
)
def test_run_config_validation(overrides, message):
    with pytest.raises(ConfigError, match=message):
        RunConfig.from_dict(oscillator_config(**overrides))


def test_run_config_rejects_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError, match="Invalid JSON"):
        RunConfig.load(path)
    with pytest.raises(OSError):
        RunConfig.load(tmp_path / "missing.json")
