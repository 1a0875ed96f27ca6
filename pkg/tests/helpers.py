"""Shared ensembles and hypothesis strategies for the test suite."""

from __future__ import annotations

import math

import hypothesis.strategies as st
import numpy as np
from hypothesis import assume

from quasijoint import MarkerConfig, PureState


def haar_state(rng: np.random.Generator) -> PureState:
    """Uniform pure state from four normal deviates."""
    raw = rng.normal(size=4)
    norm = math.sqrt(float((raw**2).sum()))
    return PureState(complex(raw[0], raw[1]) / norm, complex(raw[2], raw[3]) / norm)


def real_amplitude_state(rng: np.random.Generator) -> PureState:
    """State with <Y> = 0: real amplitudes (cos w, sin w)."""
    w = rng.uniform(0.0, math.pi)
    return PureState(math.cos(w), math.sin(w))


def invertible_config(
    rng: np.random.Generator,
    theta_lo: float = 0.1,
    theta_hi: float = math.pi / 2 - 0.1,
    analyzer_margin: float = 0.05,
) -> MarkerConfig:
    """Random config keeping both kernel denominators well away from zero."""
    theta = rng.uniform(theta_lo, theta_hi)
    while True:
        vartheta = rng.uniform(0.0, math.pi)
        if abs(math.sin(2.0 * vartheta - theta)) > analyzer_margin:
            return MarkerConfig(theta, vartheta)


@st.composite
def pure_states(draw) -> PureState:
    parts = [
        draw(st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)) for _ in range(4)
    ]
    norm_sq = sum(p * p for p in parts)
    assume(norm_sq > 1e-2)
    norm = math.sqrt(norm_sq)
    return PureState(complex(parts[0], parts[1]) / norm, complex(parts[2], parts[3]) / norm)


@st.composite
def any_configs(draw) -> MarkerConfig:
    theta = draw(st.floats(0.0, math.pi, allow_nan=False, exclude_max=True))
    vartheta = draw(st.floats(0.0, math.pi, allow_nan=False, exclude_max=True))
    return MarkerConfig(theta, vartheta)


@st.composite
def invertible_configs(draw) -> MarkerConfig:
    theta = draw(st.floats(0.1, math.pi / 2 - 0.1, allow_nan=False))
    vartheta = draw(st.floats(0.0, math.pi, allow_nan=False, exclude_max=True))
    assume(abs(math.sin(2.0 * vartheta - theta)) > 0.05)
    return MarkerConfig(theta, vartheta)
