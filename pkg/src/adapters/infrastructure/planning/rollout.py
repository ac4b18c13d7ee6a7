import math

import numpy as np

from adapters.infrastructure.geometry.unicycle import STRAIGHT_LINE_OMEGA, unicycle_step
from domain.VelocityCommand import VelocityCommand


def rollout_steps(dt_plan: float, horizon: float) -> int:
    if dt_plan <= 0 or horizon < dt_plan:
        raise ValueError(f"Rollout needs 0 < dt_plan <= horizon, got dt_plan={dt_plan}, horizon={horizon}")
    return math.ceil(horizon / dt_plan - 1e-9)


def rollout_batch(start, velocities, omegas, dt_plan: float, horizon: float) -> np.ndarray:
    """(N, n + 1, 3) states of N constant commands from one start, in closed form.

    Arcs of radius v/omega; straight lines where |omega| < 1e-6.
    """
    steps = rollout_steps(dt_plan, horizon)
    x0, y0, yaw0 = np.asarray(start, dtype=float)[:3]
    velocities = np.asarray(velocities, dtype=float).reshape(-1, 1)
    omegas = np.asarray(omegas, dtype=float).reshape(-1, 1)
    times = np.arange(steps + 1) * dt_plan

    straight = np.abs(omegas) < STRAIGHT_LINE_OMEGA
    yaws = yaw0 + omegas * times
    radii = velocities / np.where(straight, 1.0, omegas)
    xs = np.where(straight, x0 + velocities * times * math.cos(yaw0), x0 + radii * (np.sin(yaws) - math.sin(yaw0)))
    ys = np.where(straight, y0 + velocities * times * math.sin(yaw0), y0 - radii * (np.cos(yaws) - math.cos(yaw0)))
    return np.stack([xs, ys, yaws], axis=2)


def rollout(start, command: VelocityCommand, dt_plan: float, horizon: float) -> np.ndarray:
    """(n + 1, 3) states of a constant command, starting at start."""
    return rollout_batch(start, [command.v], [command.omega], dt_plan, horizon)[0]


def braking_rollout(start, v: float, a_v: float, dt_plan: float, horizon: float) -> np.ndarray:
    """Straight-line stop decelerating at a_v."""
    steps = rollout_steps(dt_plan, horizon)
    states = np.empty((steps + 1, 3))
    states[0] = np.asarray(start, dtype=float)[:3]
    x, y, yaw = states[0]
    for k in range(1, steps + 1):
        speed = max(0.0, v - a_v * dt_plan * k)
        x, y, yaw = unicycle_step(x, y, yaw, speed, 0.0, dt_plan)
        states[k] = x, y, yaw
    return states
