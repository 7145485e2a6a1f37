from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from ..errors import (
    ConfigError,
    CostGuardError,
    IntegrationError,
    MissingSymbolError,
    VerificationError,
)
from ..moments.encoding import parse_symbol
from ..moments.types import BracketKind, SystemSignature
from .diagnostics import emit_startup_warnings

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_VERIFICATION = 4
EXIT_IO = 5

VERIFY_SCOPES = ("identities", "brackets", "lemma", "jacobi", "all")
LOG_FORMAT = "[%(module)-12s] %(message)s"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridmoments",
        description="Moment brackets, truncated equations of motion and verification "
        "for quantum, classical and hybrid dynamics.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log progress (-v info, -vv debug)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    bracket = sub.add_parser("bracket", help="Bracket of two moment keys or centroids")
    bracket.add_argument("left", help="Moment key such as d[2,0] or a centroid such as q1")
    bracket.add_argument("right", help="Moment key such as d[0,2] or a centroid such as p1")
    bracket.add_argument("--sig", default="0c1q", help="Signature such as 0c1q or 1c1q (default: 0c1q)")
    bracket.add_argument("--kind", help="quantum, classical or hybrid (default: from the signature)")
    bracket.add_argument("--hbar", type=float, default=1.0, help="Value of hbar; 0 drops hbar^2 terms")
    bracket.add_argument("--oracle", action="store_true", help="Compute with the operator-algebra oracle")

    eom = sub.add_parser("eom", help="Print H_eff and the truncated equations of motion")
    source = eom.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", metavar="PATH", help="Run configuration (JSON)")
    source.add_argument("--preset", help="Hamiltonian preset name (see 'presets')")
    eom.add_argument("--sig", help="Signature (default: the preset's)")
    eom.add_argument("--kind", help="Bracket kind (default: from the signature)")
    eom.add_argument("--order", type=int, default=2, help="Truncation order N_max (default: 2)")
    eom.add_argument("--hbar", type=float, default=1.0)
    eom.add_argument(
        "--param", action="append", default=[], metavar="NAME=VALUE", help="Override a preset parameter"
    )

    simulate = sub.add_parser("simulate", help="Integrate a run configuration and write CSV")
    simulate.add_argument("config", help="Run configuration (JSON)")
    simulate.add_argument("--csv", metavar="PATH", help="CSV output path (default: config output.csv or stdout)")
    simulate.add_argument("--summary", metavar="PATH", help="Write the JSON summary to PATH")

    oscillator = sub.add_parser("oscillator", help="Coupled classical-quantum oscillator benchmark")
    oscillator.add_argument("--scenario", help="Packaged scenario (see 'presets')")
    oscillator.add_argument("--omega1", type=float, help="Fast normal-mode frequency")
    oscillator.add_argument("--omega2", type=float, help="Slow normal-mode frequency")
    oscillator.add_argument("--omega1-sq", help="Exact omega1^2, e.g. 9 or 17/2")
    oscillator.add_argument("--omega2-sq", help="Exact omega2^2, e.g. 8")
    for name in ("q0", "p0", "x0", "k0"):
        oscillator.add_argument(f"--{name}", type=float, help=f"Initial {name[0]}")
    for name in ("c0020", "c0002", "c0011"):
        oscillator.add_argument(f"--{name}", type=float, help=f"Initial quantum moment {name.upper()}")
    oscillator.add_argument("--t-end", type=float, help="Final time (default: scenario or 30)")
    oscillator.add_argument("--step", type=float, default=1e-3, help="rk4 step (default: 1e-3)")
    oscillator.add_argument("--stride", type=int, default=1, help="Emit every N-th step")
    oscillator.add_argument("--kind", default="hybrid", help="Bracket kind (default: hybrid)")
    oscillator.add_argument("--hbar", type=float, help="Report U_q against hbar^2/4 (default: hbar^2/4 = U0)")
    oscillator.add_argument("--prefix", default="oscillator", help="CSV prefix (default: oscillator)")
    oscillator.add_argument("--report", metavar="PATH", help="Write the JSON report to PATH instead of stdout")

    verify = sub.add_parser("verify", help="Run verification suites against the operator-algebra oracle")
    verify.add_argument("scope", choices=VERIFY_SCOPES)
    verify.add_argument("--max-exp", type=int, default=4, help="Largest exponent for identities (<= 6)")
    verify.add_argument("--max-order", type=int, help="Largest moment order (defaults depend on the scope)")
    verify.add_argument("--kind", help="Restrict jacobi to one bracket kind")
    verify.add_argument("--samples", type=int, default=200, help="Random Jacobi triples at N=2")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--witness-order", type=int, default=4, help="Order of the hybrid witness search")
    verify.add_argument("--json", metavar="PATH", help="Write the JSON report to PATH ('-' for stdout)")

    sub.add_parser("presets", help="List packaged Hamiltonian presets and oscillator scenarios")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(format=LOG_FORMAT, level=level)


def _resolve_kind(value: Optional[str], sig: SystemSignature) -> BracketKind:
    from ..config.models import default_kind

    if value is None:
        return default_kind(sig)
    return BracketKind.parse(value)


def _parse_overrides(items: Sequence[str]) -> Dict[str, str]:
    overrides = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ConfigError(f"Invalid parameter override '{item}' (expected NAME=VALUE)")
        overrides[name.strip()] = value.strip()
    return overrides


def run_bracket(args: argparse.Namespace) -> int:
    from ..brackets.engine import symbol_bracket

    sig = SystemSignature.parse(args.sig, args.hbar)
    kind = _resolve_kind(args.kind, sig)
    left = parse_symbol(args.left, sig.n_dof)
    right = parse_symbol(args.right, sig.n_dof)
    if args.oracle:
        from ..oracle.moments import oracle_bracket

        result = oracle_bracket(left, right, sig, kind)
    else:
        result = symbol_bracket(left, right, sig, kind)
    print(result.render())
    return EXIT_OK


def run_eom(args: argparse.Namespace) -> int:
    from ..hamiltonian.eom import generate_eom
    from ..rendering.text import render_eom_report

    if args.config:
        from ..config.models import RunConfig
        from ..dynamics.job import SimulationJob

        job = SimulationJob(RunConfig.load(args.config))
        system = job.build_system()
        names = job.resolver.aliases
    else:
        from ..presets import HamiltonianPresetRegistry, HamiltonianResolver, SymbolResolver

        preset = HamiltonianResolver(HamiltonianPresetRegistry.load()).require_preset(args.preset)
        sig = SystemSignature.parse(args.sig or preset.signature, args.hbar)
        if sig.n_dof != preset.n_dof:
            raise ConfigError(
                f"Preset '{preset.name}' has {preset.n_dof} degrees of freedom, {sig.label} has {sig.n_dof}"
            )
        quantum = range(sig.n_classical + 1, sig.n_dof + 1)
        hamiltonian = preset.build(tuple(quantum), _parse_overrides(args.param))
        system = generate_eom(hamiltonian, sig, _resolve_kind(args.kind, sig), args.order)
        names = SymbolResolver(sig.n_dof, preset.dof_names).aliases
    print(render_eom_report(system, names))
    return EXIT_OK


def run_simulate(args: argparse.Namespace) -> int:
    from ..config.models import RunConfig
    from ..dynamics.job import SimulationJob
    from ..rendering.tables import save_csv, trajectory_csv

    config = RunConfig.load(args.config)
    result = SimulationJob(config).run()
    text = trajectory_csv(result.trajectory)
    csv_path = args.csv or config.output.csv
    summary_path = args.summary or config.output.summary
    if csv_path:
        save_csv(csv_path, text)
        print(result.summary.render())
    else:
        sys.stdout.write(text)
        print(result.summary.render(), file=sys.stderr)
    if summary_path:
        Path(summary_path).write_text(json.dumps(result.summary.to_dict(), indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


def _oscillator_inputs(args: argparse.Namespace):
    from ..hamiltonian.models import parse_rational
    from ..oscillator.params import OscillatorParams
    from ..presets import ScenarioRegistry

    scenario = None
    if args.scenario:
        scenario = ScenarioRegistry.load().get(args.scenario)
        if not scenario:
            known = ", ".join(s.name for s in ScenarioRegistry.load().scenarios)
            raise ConfigError(f"Unknown scenario '{args.scenario}' (known: {known})")
    omega1_sq = scenario.omega1_sq if scenario else parse_rational(9)
    omega2_sq = scenario.omega2_sq if scenario else parse_rational(8)
    if args.omega1 is not None:
        omega1_sq = parse_rational(args.omega1 * args.omega1)
    if args.omega2 is not None:
        omega2_sq = parse_rational(args.omega2 * args.omega2)
    if args.omega1_sq is not None:
        omega1_sq = parse_rational(args.omega1_sq)
    if args.omega2_sq is not None:
        omega2_sq = parse_rational(args.omega2_sq)
    try:
        params = OscillatorParams(omega1_sq, omega2_sq)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    centroids = list(scenario.centroids) if scenario else [0.0, 0.0, 0.0, 0.0]
    for index, name in enumerate(("q0", "p0", "x0", "k0")):
        value = getattr(args, name)
        if value is not None:
            centroids[index] = value
    moments = scenario.initial_moments if scenario else {}
    for name, index in (("c0020", (0, 0, 2, 0)), ("c0002", (0, 0, 0, 2)), ("c0011", (0, 0, 1, 1))):
        value = getattr(args, name)
        if value is not None:
            moments[index] = value
    t_end = args.t_end if args.t_end is not None else (scenario.t_end if scenario else 30.0)
    return params, tuple(centroids), moments, t_end


def _bound_grid(params, t_end: float):
    import numpy as np

    from ..oscillator.bounds import MIN_POINTS_PER_BEAT

    beats = 1.0 if params.decoupled else t_end / params.beat_period
    points = max(MIN_POINTS_PER_BEAT + 1, int(math.ceil(MIN_POINTS_PER_BEAT * beats)) + 2)
    return np.linspace(0.0, t_end, points)


def run_oscillator(args: argparse.Namespace) -> int:
    import numpy as np

    from ..dynamics.integrator import integrate
    from ..dynamics.observables import sector_series
    from ..dynamics.state import IntegratorConfig, SimState
    from ..hamiltonian.eom import generate_eom
    from ..oscillator.analytic import analytic_centroid, analytic_moment, conservation_residual, index_to_key
    from ..oscillator.bounds import bound_report, hybrid_floor, quantum_pair_floor
    from ..oscillator.params import recurrence_time
    from ..rendering.tables import save_csv, series_csv, trajectory_csv

    params, centroids, moments, t_end = _oscillator_inputs(args)
    sig = SystemSignature(1, 1)
    kind = BracketKind.parse(args.kind)
    n_max = max([2] + [sum(index) for index in moments])
    system = generate_eom(params.hamiltonian(), sig, kind, n_max)
    initial: Dict[object, float] = dict(zip(system.layout[:4], centroids))
    initial.update({index_to_key(index): value for index, value in moments.items()})
    state = SimState.from_mapping(system, initial)  # type: ignore[arg-type]
    cfg = IntegratorConfig(t_end, step=args.step, output_stride=args.stride)
    trajectory = integrate(system, state, cfg, sig.hbar)

    times = trajectory.times
    analytic: List[np.ndarray] = list(np.moveaxis(analytic_centroid(times, centroids, params), -1, 0))
    for symbol in system.layout[4:]:
        analytic.append(analytic_moment(times, symbol, moments, params))  # type: ignore[arg-type]
    header = [symbol.render() for symbol in system.layout]
    save_csv(f"{args.prefix}_analytic.csv", series_csv(header, times, analytic))
    save_csv(f"{args.prefix}_simulated.csv", trajectory_csv(trajectory))

    errors = {
        name: float(np.max(np.abs(trajectory.values[:, column] - analytic[column])))
        for column, name in enumerate(header)
    }
    u0 = moments.get((0, 0, 2, 0), 0.0) * moments.get((0, 0, 0, 2), 0.0) - moments.get((0, 0, 1, 1), 0.0) ** 2
    u_c, u_q = sector_series(trajectory, sig)
    report: Dict[str, object] = {
        "params": {
            "omega1_sq": str(params.omega1_sq),
            "omega2_sq": str(params.omega2_sq),
            "omega_sq": str(params.omega_sq),
            "gamma": str(params.gamma),
            "omega1": params.omega1,
            "omega2": params.omega2,
            "beat_period": None if params.decoupled else params.beat_period,
            "recurrence_time": recurrence_time(params),
        },
        "u0": u0,
        "simulation": {
            "kind": kind.value,
            "samples": len(trajectory),
            "max_abs_error": errors,
            "max_abs_error_overall": max(errors.values()),
            "u_c_max": float(np.max(u_c)),
            "u_q_min": float(np.min(u_q)),
            "floor_min": float(np.min(u_c + u_q)),
            "hybrid_floor": hybrid_floor(u0),
            "quantum_pair_floor": quantum_pair_floor(u0),
            "conservation_residual_max": float(np.max(np.abs(conservation_residual(u_c, u_q, u0)))),
        },
    }
    if u0 > 0 and t_end > 0:
        threshold = None if args.hbar is None else args.hbar * args.hbar / 4
        bounds = bound_report(params, u0, _bound_grid(params, t_end), threshold)
        report["bounds"] = bounds.to_dict()
    text = json.dumps(report, indent=2)
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    from ..oracle.identities import verify_reordering_identities
    from ..oracle.suites import bracket_grid_report, jacobi_report, lemma_report, run_all

    if args.scope == "identities":
        report = verify_reordering_identities(args.max_exp)
    elif args.scope == "brackets":
        order = args.max_order or 4
        report = bracket_grid_report(order, min(order, 3))
    elif args.scope == "lemma":
        report = lemma_report(args.max_order or 4)
    elif args.scope == "jacobi":
        kinds = [BracketKind.parse(args.kind)] if args.kind else list(BracketKind)
        report = jacobi_report(kinds, args.max_order or 3, args.samples, args.seed, args.witness_order)
    else:
        report = run_all(args.max_exp, args.max_order or 3)
    if args.json == "-":
        print(report.to_json())
    else:
        print(report.render())
        if args.json:
            Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def list_presets() -> int:
    from ..presets import HamiltonianPresetRegistry, ScenarioRegistry

    print("Hamiltonian presets:")
    for preset in HamiltonianPresetRegistry.load().presets:
        parameters = ", ".join(f"{name}={value}" for name, value in preset.parameters)
        suffix = f" [{parameters}]" if parameters else ""
        print(f"  {preset.name} ({preset.signature}){suffix}: {preset.description}")
    print("Oscillator scenarios:")
    for scenario in ScenarioRegistry.load().scenarios:
        print(
            f"  {scenario.name} (omega1^2={scenario.omega1_sq}, omega2^2={scenario.omega2_sq}, "
            f"t_end={scenario.t_end:g}): {scenario.description}"
        )
    return EXIT_OK


COMMANDS = {
    "bracket": run_bracket,
    "eom": run_eom,
    "simulate": run_simulate,
    "oscillator": run_oscillator,
    "verify": run_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    emit_startup_warnings()
    args = parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.command == "presets":
            return list_presets()
        return COMMANDS[args.command](args)
    except (ConfigError, CostGuardError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, MissingSymbolError, FloatingPointError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NUMERIC
    except VerificationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VERIFICATION
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
