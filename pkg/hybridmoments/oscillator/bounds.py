from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..oracle.report import CheckResult, VerificationReport
from .analytic import conservation_residual, uncertainty_functions
from .params import OscillatorParams

logger = logging.getLogger(__name__)

MIN_POINTS_PER_BEAT = 10_000
BOUND_TOLERANCE = 1e-4
CONSERVATION_TOLERANCE = 1e-9


def hybrid_floor(u0: float) -> float:
    """Lower bound of U_c + U_q for a hybrid pair."""
    return u0 / 2


def quantum_pair_floor(u0: float) -> float:
    """Lower bound of the summed uncertainties when both oscillators are quantum."""
    return 2 * u0


def max_uncertainty_bound(params: OscillatorParams, u0: float) -> float:
    w1, w2 = params.omega1, params.omega2
    return u0 * (w1 + w2) ** 4 / (16 * w1 * w1 * w2 * w2)


def points_per_beat(params: OscillatorParams, t_grid: np.ndarray) -> float:
    span = float(t_grid[-1] - t_grid[0])
    if params.decoupled or span <= 0:
        return math.inf
    return len(t_grid) * params.beat_period / span


@dataclass
class BoundReport:
    g_min: float
    g_max: float
    u_c_min: float
    u_c_max: float
    u_q_min: float
    u_q_max: float
    floor_min: float
    residual_max: float
    heisenberg_threshold: float
    hybrid_floor: float
    quantum_pair_floor: float
    checks: VerificationReport = field(default_factory=lambda: VerificationReport("oscillator bounds"))

    @property
    def heisenberg_violated(self) -> bool:
        return self.u_q_min < self.heisenberg_threshold

    @property
    def passed(self) -> bool:
        return self.checks.passed

    def to_dict(self) -> Dict[str, object]:
        values: Dict[str, object] = {
            name: getattr(self, name)
            for name in (
                "g_min",
                "g_max",
                "u_c_min",
                "u_c_max",
                "u_q_min",
                "u_q_max",
                "floor_min",
                "residual_max",
                "heisenberg_threshold",
                "hybrid_floor",
                "quantum_pair_floor",
            )
        }
        values["heisenberg_violated"] = self.heisenberg_violated
        values["checks"] = self.checks.to_dict()
        return values


def _within(name: str, value: float, low: float, high: float, tolerance: float) -> CheckResult:
    slack = tolerance * max(abs(low), abs(high))
    ok = low - slack <= value <= high + slack
    return CheckResult(name, ok, 1, None if ok else f"{value!r} outside [{low!r}, {high!r}]")


def bound_report(
    params: OscillatorParams,
    u0: float,
    t_grid: np.ndarray,
    heisenberg_threshold: Optional[float] = None,
) -> BoundReport:
    """Locate the extrema of g, U_c and U_q on ``t_grid`` and check them against the closed bounds.

    ``heisenberg_threshold`` is ħ²/4; it defaults to U0.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    density = points_per_beat(params, t_grid)
    if density < MIN_POINTS_PER_BEAT:
        raise ValueError(
            f"Time grid too coarse: {density:.0f} points per beat period, need at least {MIN_POINTS_PER_BEAT}"
        )
    u_c, u_q, g = uncertainty_functions(t_grid, u0, params)
    w1, w2 = params.omega1, params.omega2
    residual = np.abs(conservation_residual(u_c, u_q, u0))
    report = BoundReport(
        g_min=float(g.min()),
        g_max=float(g.max()),
        u_c_min=float(u_c.min()),
        u_c_max=float(u_c.max()),
        u_q_min=float(u_q.min()),
        u_q_max=float(u_q.max()),
        floor_min=float((u_c + u_q).min()),
        residual_max=float(residual.max()),
        heisenberg_threshold=u0 if heisenberg_threshold is None else heisenberg_threshold,
        hybrid_floor=hybrid_floor(u0),
        quantum_pair_floor=quantum_pair_floor(u0),
    )
    checks: List[CheckResult] = [
        _within("g_min", report.g_min, -(w1 * w1 + w2 * w2), -2 * w1 * w2, BOUND_TOLERANCE),
        _within("g_max", report.g_max, 2 * w1 * w2, w1 * w1 + w2 * w2, BOUND_TOLERANCE),
        _within("u_c_max", report.u_c_max, u0, max_uncertainty_bound(params, u0), BOUND_TOLERANCE),
        _within("u_q_max", report.u_q_max, u0, max_uncertainty_bound(params, u0), BOUND_TOLERANCE),
    ]
    floor_ok = report.floor_min >= report.hybrid_floor - CONSERVATION_TOLERANCE * max(u0, 1.0)
    checks.append(CheckResult("hybrid_floor", floor_ok, len(t_grid), None if floor_ok else f"min {report.floor_min!r}"))
    residual_ok = report.residual_max < CONSERVATION_TOLERANCE * u0 * u0
    checks.append(
        CheckResult("conservation", residual_ok, len(t_grid), None if residual_ok else f"max {report.residual_max!r}")
    )
    for check in checks:
        report.checks.add(check)
    logger.info(
        "Bounds for omega1=%g omega2=%g: g in [%g, %g], U_q min %g (%s)",
        w1,
        w2,
        report.g_min,
        report.g_max,
        report.u_q_min,
        "below hbar^2/4" if report.heisenberg_violated else "respects hbar^2/4",
    )
    return report
