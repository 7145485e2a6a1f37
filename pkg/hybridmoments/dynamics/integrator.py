"""Fixed-step RK4 and embedded Runge-Kutta-Fehlberg 4(5) integration."""

from __future__ import annotations

import logging
import math
from typing import Callable, List, Tuple

import numpy as np

from ..errors import IntegrationError
from ..hamiltonian.eom import EomSystem
from .compiled import compile_rhs
from .state import IntegrationMethod, IntegratorConfig, SimState, Trajectory

logger = logging.getLogger(__name__)

Rhs = Callable[[float, np.ndarray], np.ndarray]

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0
MIN_STEP = 1e-14


def rk4_step(f: Rhs, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def rkf45_step(f: Rhs, t: float, y: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """One Fehlberg step; returns the fifth-order solution and the error estimate."""
    k1 = f(t, y)
    k2 = f(t + h / 4.0, y + 0.25 * h * k1)
    k3 = f(t + 3.0 * h / 8.0, y + 3.0 * h * k1 / 32.0 + 9.0 * h * k2 / 32.0)
    k4 = f(t + 12.0 * h / 13.0, y + 1932.0 * h * k1 / 2197.0 - 7200.0 * h * k2 / 2197.0 + 7296.0 * h * k3 / 2197.0)
    k5 = f(t + h, y + 439.0 * h * k1 / 216.0 - 8.0 * h * k2 + 3680.0 * h * k3 / 513.0 - 845.0 * h * k4 / 4104.0)
    k6 = f(
        t + h / 2.0,
        y
        - 8.0 * h * k1 / 27.0
        + 2.0 * h * k2
        - 3544.0 * h * k3 / 2565.0
        + 1859.0 * h * k4 / 4104.0
        - 11.0 * h * k5 / 40.0,
    )
    y1 = y + h * (16.0 * k1 / 135.0 + 6656.0 * k3 / 12825.0 + 28561.0 * k4 / 56430.0 - 9.0 * k5 / 50.0 + 2.0 * k6 / 55.0)
    err = np.abs(h * (k1 / 360.0 - 128.0 * k3 / 4275.0 - 2197.0 * k4 / 75240.0 + k5 / 50.0 + 2.0 * k6 / 55.0))
    return y1, err


def _step_underflows(t: float, h: float) -> bool:
    """True once h is too small to move t by more than a few ulps."""
    return h < max(MIN_STEP, 16 * float(np.spacing(t)))


def _check_finite(t: float, y: np.ndarray) -> None:
    if not np.all(np.isfinite(y)):
        raise IntegrationError(f"Nonfinite state encountered at t={t!r}")


def integrate_rk4(f: Rhs, y0: np.ndarray, t_end: float, step: float, stride: int) -> Tuple[np.ndarray, np.ndarray, int]:
    n_steps = max(0, math.ceil(t_end / step - 1e-9))
    times: List[float] = [0.0]
    rows: List[np.ndarray] = [y0.copy()]
    y = y0.copy()
    t = 0.0
    for i in range(1, n_steps + 1):
        h = min(step, t_end - t)
        y = rk4_step(f, t, y, h)
        t = t_end if i == n_steps else i * step
        _check_finite(t, y)
        if i % stride == 0 or i == n_steps:
            times.append(t)
            rows.append(y.copy())
    return np.asarray(times), np.asarray(rows), n_steps


def integrate_rkf45(
    f: Rhs, y0: np.ndarray, t_end: float, cfg: IntegratorConfig
) -> Tuple[np.ndarray, np.ndarray, int, int]:
    times: List[float] = [0.0]
    rows: List[np.ndarray] = [y0.copy()]
    y = y0.copy()
    t = 0.0
    h = min(cfg.step, t_end) if t_end > 0 else 0.0
    accepted = rejected = 0
    while t < t_end:
        if accepted + rejected >= cfg.max_steps:
            raise IntegrationError(f"Exceeded {cfg.max_steps} steps before t={t_end!r}")
        h = min(h, t_end - t)
        candidate, err = rkf45_step(f, t, y, h)
        scale = cfg.atol + cfg.rtol * np.maximum(np.abs(y), np.abs(candidate))
        error = float(np.max(err / scale)) if err.size else 0.0
        if not math.isfinite(error):
            raise IntegrationError(f"Nonfinite error estimate at t={t!r}")
        if error <= 1.0:
            t = t_end if t + h >= t_end else t + h
            y = candidate
            accepted += 1
            _check_finite(t, y)
            if accepted % cfg.output_stride == 0 or t >= t_end:
                times.append(t)
                rows.append(y.copy())
        else:
            rejected += 1
        factor = MAX_FACTOR if error == 0.0 else SAFETY * error ** -0.2
        h *= min(MAX_FACTOR, max(MIN_FACTOR, factor))
        if t < t_end and _step_underflows(t, h):
            raise IntegrationError(f"Step size underflow at t={t!r}")
    return np.asarray(times), np.asarray(rows), accepted, rejected


def integrate(system: EomSystem, initial: SimState, cfg: IntegratorConfig, hbar: float) -> Trajectory:
    """Integrate from ``initial.time`` for ``cfg.t_end`` time units."""
    if initial.layout != system.layout:
        raise ValueError("Initial state is not aligned with the equation layout")
    if not initial.is_finite():
        raise IntegrationError("Initial state contains nonfinite values")
    rhs = compile_rhs(system, hbar)
    start = initial.time

    def f(t: float, y: np.ndarray) -> np.ndarray:
        return rhs(start + t, y)

    if cfg.method is IntegrationMethod.RK4:
        times, rows, accepted = integrate_rk4(f, initial.values, cfg.t_end, cfg.step, cfg.output_stride)
        rejected = 0
    else:
        times, rows, accepted, rejected = integrate_rkf45(f, initial.values, cfg.t_end, cfg)
    logger.info(
        "Integrated %d equations with %s to t=%g: %d steps (%d rejected), %d samples",
        system.size,
        cfg.method.value,
        start + cfg.t_end,
        accepted,
        rejected,
        len(times),
    )
    return Trajectory(system.layout, times + start, rows.reshape(len(times), system.size), accepted, rejected)
