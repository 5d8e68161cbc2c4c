"""Time maximization and parameter sweeps of the transition probability.

The finite-temperature P(t) is almost periodic (incommensurate sector
frequencies), so the maximum is located by a dense coarse scan followed by
golden-section refinement around the best sample.  Zero-temperature
configurations use the closed-form peak instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .config import SystemConfig, ThermalSpec, validated
from .dynamics import (correlated_ground_state, delta0_correlated,
                       p12_correlated_zero_temp, p12_thermal, p12_zero_temp,
                       _sector_arrays)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

SWEEP_PARAMETERS = ("gamma1", "gamma2", "gamma_both", "q", "temperature", "J", "t")


@dataclass(frozen=True)
class TimeWindow:
    t_min: float = 0.0
    t_max: float = 2.0
    coarse_steps: int = 2000
    refine_iterations: int = 60

    def __post_init__(self):
        if not (0.0 <= self.t_min < self.t_max):
            raise ValueError("need 0 <= t_min < t_max")
        if self.coarse_steps < 2:
            raise ValueError("coarse_steps must be >= 2")


@dataclass(frozen=True)
class SweepGrid:
    axis1_name: str
    axis1_values: np.ndarray
    axis2_name: str | None
    axis2_values: np.ndarray | None
    values: np.ndarray   # shape (n1,) or (n1, n2)
    t_star: np.ndarray   # same shape; peak time per cell
    argmax: dict


def _zero_temp_peak(config: SystemConfig) -> tuple[float, float]:
    b1, b2 = config.bath1, config.bath2
    branch = correlated_ground_state(b1.alpha, b2.alpha, config.correlation.q,
                                     b1.N, b2.N)
    d = delta0_correlated(config, branch).value
    J = config.dimer.J
    omega = math.sqrt(J * J + d * d)
    return math.pi / (2.0 * omega), J * J / (J * J + d * d)


def _golden_max(f, a: float, b: float, iterations: int) -> tuple[float, float]:
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc > fd else (d, fd)


def max_over_time(config: SystemConfig,
                  window: TimeWindow | None = None) -> tuple[float, float]:
    """(t*, P*) of the transition probability over the window.

    Zero-temperature configs return the exact closed-form peak; finite
    temperature uses coarse scan + golden-section refinement, which never
    returns less than the best coarse sample.
    """
    validated(config)
    if window is None:
        window = TimeWindow()
    if config.thermal.is_zero_temperature:
        return _zero_temp_peak(config)

    w, delta = _sector_arrays(config)
    J = config.dimer.J
    omega2 = J * J + delta * delta
    omega = np.sqrt(omega2)
    amp = (J * J) / omega2

    # the coarse grid has to resolve the fastest sector oscillation
    dt = (window.t_max - window.t_min) / (window.coarse_steps - 1)
    omega_max = float(omega.max())
    if dt > math.pi / omega_max / 4.0:
        raise ValueError(
            f"coarse step {dt:.3g} ps cannot resolve the fastest sector "
            f"frequency {omega_max:.3g} ps^-1; need more coarse_steps")

    ts = np.linspace(window.t_min, window.t_max, window.coarse_steps)
    p = (amp[None, :] * np.sin(ts[:, None] * omega[None, :]) ** 2) @ w
    i = int(p.argmax())
    t_best, p_best = float(ts[i]), float(p[i])

    def f(t: float) -> float:
        return float((amp * np.sin(t * omega) ** 2) @ w)

    a = max(window.t_min, t_best - dt)
    b = min(window.t_max, t_best + dt)
    t_ref, p_ref = _golden_max(f, a, b, window.refine_iterations)
    if p_ref > p_best:
        return t_ref, p_ref
    return t_best, p_best


def _apply_parameter(config: SystemConfig, name: str, value: float) -> SystemConfig:
    if name == "gamma1":
        return replace(config, bath1=replace(config.bath1, gamma=value))
    if name == "gamma2":
        return replace(config, bath2=replace(config.bath2, gamma=value))
    if name == "gamma_both":
        return replace(config,
                       bath1=replace(config.bath1, gamma=value),
                       bath2=replace(config.bath2, gamma=value))
    if name == "q":
        return replace(config, correlation=replace(config.correlation, q=value))
    if name == "temperature":
        return replace(config, thermal=ThermalSpec.kelvin(value))
    if name == "J":
        return replace(config, dimer=replace(config.dimer, J=value))
    raise ValueError(f"unknown sweep parameter {name!r}; "
                     f"choose from {SWEEP_PARAMETERS}")


def _p_at_time(config: SystemConfig, t) -> np.ndarray:
    if config.thermal.is_zero_temperature:
        if config.correlation.q == 0.0:
            return p12_zero_temp(config, t)
        return p12_correlated_zero_temp(config, t)
    return p12_thermal(config, t)


def sweep(config: SystemConfig, axes, window: TimeWindow | None = None,
          threads: int | None = None) -> SweepGrid:
    """Grid of max-over-time values (or raw P(t) when one axis is time).

    axes: list of 1 or 2 (name, values) pairs; names from SWEEP_PARAMETERS.
    Results are written to pre-indexed slots, so any parallel execution by
    the caller is order-independent; the built-in path is deterministic.
    """
    validated(config)
    if window is None:
        window = TimeWindow()
    if not 1 <= len(axes) <= 2:
        raise ValueError("sweep takes one or two axes")
    names = [name for name, _ in axes]
    for name in names:
        if name not in SWEEP_PARAMETERS:
            raise ValueError(f"unknown sweep parameter {name!r}; "
                             f"choose from {SWEEP_PARAMETERS}")
    if names.count("t") > 1:
        raise ValueError("at most one axis may be time")
    values = [np.asarray(v, dtype=float) for _, v in axes]
    if any(not np.isfinite(v).all() for v in values):
        raise ValueError("axis values must be finite")

    shape = tuple(len(v) for v in values)
    grid = np.empty(shape)
    tgrid = np.empty(shape)

    time_axis = names.index("t") if "t" in names else None
    if time_axis is not None:
        ts = values[time_axis]
        other = 1 - time_axis if len(axes) == 2 else None
        if other is None:
            p = np.asarray(_p_at_time(config, ts))
            grid[:], tgrid[:] = p, ts
        else:
            for i, v in enumerate(values[other]):
                cfg = _apply_parameter(config, names[other], float(v))
                p = np.asarray(_p_at_time(cfg, ts))
                if other == 0:
                    grid[i, :], tgrid[i, :] = p, ts
                else:
                    grid[:, i], tgrid[:, i] = p, ts
    else:
        for idx in np.ndindex(shape):
            cfg = config
            for ax, i in enumerate(idx):
                cfg = _apply_parameter(cfg, names[ax], float(values[ax][i]))
            t_star, p_star = max_over_time(cfg, window)
            grid[idx], tgrid[idx] = p_star, t_star

    best = np.unravel_index(int(grid.argmax()), shape)
    argmax = {
        "indices": tuple(int(i) for i in best),
        "parameters": {names[ax]: float(values[ax][best[ax]])
                       for ax in range(len(axes))},
        "t_star": float(tgrid[best]),
        "p_star": float(grid[best]),
    }
    return SweepGrid(
        axis1_name=names[0], axis1_values=values[0],
        axis2_name=names[1] if len(axes) == 2 else None,
        axis2_values=values[1] if len(axes) == 2 else None,
        values=grid, t_star=tgrid, argmax=argmax)


@dataclass(frozen=True)
class AssistanceGain:
    gain: float
    coupled: tuple[float, float]    # (t*, P*)
    decoupled: tuple[float, float]


def assistance_gain(config: SystemConfig,
                    window: TimeWindow | None = None) -> AssistanceGain:
    """Peak-probability gain of the coupled config over its gamma1=gamma2=0 twin."""
    coupled = max_over_time(config, window)
    bare = replace(config,
                   bath1=replace(config.bath1, gamma=0.0),
                   bath2=replace(config.bath2, gamma=0.0))
    decoupled = max_over_time(bare, window)
    return AssistanceGain(gain=coupled[1] - decoupled[1],
                          coupled=coupled, decoupled=decoupled)
