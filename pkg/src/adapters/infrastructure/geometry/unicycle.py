import math

import numpy as np

STRAIGHT_LINE_OMEGA = 1e-6


def unicycle_step(x: float, y: float, yaw: float, v: float, omega: float, dt: float) -> tuple[float, float, float]:
    """Exact constant-(v, omega) step: arc of radius v/omega, straight line when |omega| < 1e-6."""
    if abs(omega) < STRAIGHT_LINE_OMEGA:
        return x + v * dt * math.cos(yaw), y + v * dt * math.sin(yaw), yaw + omega * dt
    next_yaw = yaw + omega * dt
    radius = v / omega
    return (
        x + radius * (math.sin(next_yaw) - math.sin(yaw)),
        y - radius * (math.cos(next_yaw) - math.cos(yaw)),
        next_yaw,
    )


def unicycle_jacobians(x: float, y: float, yaw: float, v: float, omega: float, dt: float):
    """Returns (A, B): derivatives of the step with respect to (x, y, yaw) and (v, omega)."""
    a_matrix = np.eye(3)
    b_matrix = np.zeros((3, 2))
    b_matrix[2, 1] = dt
    cos_yaw, sin_yaw = math.cos(yaw), math.sin(yaw)

    if abs(omega) < STRAIGHT_LINE_OMEGA:
        a_matrix[0, 2] = -v * dt * sin_yaw
        a_matrix[1, 2] = v * dt * cos_yaw
        b_matrix[0, 0] = dt * cos_yaw
        b_matrix[1, 0] = dt * sin_yaw
        b_matrix[0, 1] = -0.5 * v * dt * dt * sin_yaw
        b_matrix[1, 1] = 0.5 * v * dt * dt * cos_yaw
        return a_matrix, b_matrix

    next_yaw = yaw + omega * dt
    sin_delta = math.sin(next_yaw) - sin_yaw
    cos_delta = math.cos(next_yaw) - cos_yaw
    radius = v / omega
    a_matrix[0, 2] = radius * cos_delta
    a_matrix[1, 2] = radius * sin_delta
    b_matrix[0, 0] = sin_delta / omega
    b_matrix[1, 0] = -cos_delta / omega
    b_matrix[0, 1] = -radius / omega * sin_delta + radius * math.cos(next_yaw) * dt
    b_matrix[1, 1] = radius / omega * cos_delta + radius * math.sin(next_yaw) * dt
    return a_matrix, b_matrix


def wrap_angle(angle):
    """Wraps to (-pi, pi]."""
    wrapped = np.mod(np.asarray(angle, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    wrapped = np.where(wrapped == -np.pi, np.pi, wrapped)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped
