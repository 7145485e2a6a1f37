"""Closed-form evolution of the coupled classical-quantum oscillator.

The state is ordered (q, p, x, k). Every quantity is linear in the initial
data, so centroids follow ``z(t) = A(t) z0`` and a central moment is the
corresponding coefficient of the multinomial expansion of the rows of A
applied to the initial moments.
"""

from __future__ import annotations

from typing import Dict, Mapping, Sequence, Tuple, Union

import numpy as np

from ..moments.types import MomentKey
from .params import OscillatorParams

ArrayLike = Union[float, np.ndarray]
Index4 = Tuple[int, int, int, int]
InitialMoments = Mapping[Index4, float]


def _modes(t: ArrayLike, params: OscillatorParams):
    t = np.asarray(t, dtype=float)
    w1, w2 = params.omega1, params.omega2
    return np.cos(w1 * t), np.sin(w1 * t), np.cos(w2 * t), np.sin(w2 * t), w1, w2


def centroid_map(t: ArrayLike, params: OscillatorParams) -> np.ndarray:
    """A(t) with shape ``t.shape + (4, 4)``."""
    c1, s1, c2, s2, w1, w2 = _modes(t, params)
    plus_c, minus_c = 0.5 * (c1 + c2), 0.5 * (c1 - c2)
    plus_s, minus_s = 0.5 * (s1 / w1 + s2 / w2), 0.5 * (s1 / w1 - s2 / w2)
    plus_w, minus_w = -0.5 * (w1 * s1 + w2 * s2), -0.5 * (w1 * s1 - w2 * s2)
    rows = [
        [plus_c, plus_s, minus_c, minus_s],
        [plus_w, plus_c, minus_w, minus_c],
        [minus_c, minus_s, plus_c, plus_s],
        [minus_w, minus_c, plus_w, plus_c],
    ]
    return np.stack([np.stack(row, axis=-1) for row in rows], axis=-2)


def analytic_centroid(t: ArrayLike, ics: Sequence[float], params: OscillatorParams) -> np.ndarray:
    """(q, p, x, k) at ``t``; shape ``t.shape + (4,)``."""
    return centroid_map(t, params) @ np.asarray(ics, dtype=float)


def key_to_index(key: MomentKey) -> Index4:
    if key.n_dof != 2:
        raise ValueError(f"Oscillator moments have two degrees of freedom, got {key.render()}")
    (m1, n1), (m2, n2) = key.exponents
    return (m1, n1, m2, n2)


def index_to_key(index: Index4) -> MomentKey:
    return MomentKey.of(index[0:2], index[2:4])


def _expand_linear_forms(matrix: np.ndarray, exponents: Index4) -> Dict[Index4, np.ndarray]:
    """Coefficients of ∏ᵢ (Σₗ A[i, l] z_l)^{eᵢ} as a polynomial in z."""
    poly: Dict[Index4, np.ndarray] = {(0, 0, 0, 0): np.ones(matrix.shape[:-2])}
    for row, power in enumerate(exponents):
        for _ in range(power):
            grown: Dict[Index4, np.ndarray] = {}
            for index, value in poly.items():
                for var in range(4):
                    raised = list(index)
                    raised[var] += 1
                    key = tuple(raised)
                    term = value * matrix[..., row, var]
                    grown[key] = grown[key] + term if key in grown else term  # type: ignore[index]
            poly = grown
    return poly


def analytic_moment(t: ArrayLike, key: MomentKey, moments: InitialMoments, params: OscillatorParams) -> np.ndarray:
    """Δ(q^{m1} p^{n1} x^{m2} k^{n2})(t) from initial moments of the same order (missing ones are zero)."""
    exponents = key_to_index(key)
    order = sum(exponents)
    matrix = centroid_map(t, params)
    total = np.zeros(matrix.shape[:-2])
    if order == 0:
        return total + 1.0
    for index, coefficient in _expand_linear_forms(matrix, exponents).items():
        value = moments.get(index, 0.0)
        if value:
            total = total + coefficient * value
    return total


def classical_second_moments(
    t: ArrayLike, c0020: float, c0002: float, c0011: float, params: OscillatorParams
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Δ(q²), Δ(p²), Δ(qp) when only the quantum pair starts with nonzero moments."""
    c1, s1, c2, s2, w1, w2 = _modes(t, params)
    a = 0.5 * (c1 - c2)
    b = 0.5 * (s1 / w1 - s2 / w2)
    c = -0.5 * (w1 * s1 - w2 * s2)
    q2 = a * a * c0020 + b * b * c0002 + 2 * a * b * c0011
    p2 = c * c * c0020 + a * a * c0002 + 2 * c * a * c0011
    qp = a * c * c0020 + b * a * c0002 + (a * a + b * c) * c0011
    return q2, p2, qp


def g_function(t: ArrayLike, params: OscillatorParams) -> np.ndarray:
    c1, s1, c2, s2, w1, w2 = _modes(t, params)
    return 2 * w1 * w2 * c1 * c2 + (w1 * w1 + w2 * w2) * s1 * s2


def uncertainty_functions(
    t: ArrayLike, u0: float, params: OscillatorParams
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(U_c, U_q, g) for vanishing initial classical moments."""
    g = g_function(t, params)
    w1, w2 = params.omega1, params.omega2
    denominator = 16 * w1 * w1 * w2 * w2
    u_c = u0 * (2 * w1 * w2 - g) ** 2 / denominator
    u_q = u0 * (2 * w1 * w2 + g) ** 2 / denominator
    return u_c, u_q, g


def conservation_residual(u_c: ArrayLike, u_q: ArrayLike, u0: float) -> np.ndarray:
    """(U_q - U_c - U0)² - 4 U0 U_c, identically zero along exact trajectories."""
    u_c, u_q = np.asarray(u_c), np.asarray(u_q)
    return (u_q - u_c - u0) ** 2 - 4 * u0 * u_c
