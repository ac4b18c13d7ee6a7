import math

import numpy as np

from adapters.infrastructure.mapping.clearance_query import clearances
from domain.DwaConfig import DwaConfig
from domain.OccupancyGrid import OccupancyGrid
from domain.TrajectoryCandidate import TrajectoryCandidate


def trajectory_clearances(positions: np.ndarray, grid: OccupancyGrid, max_radius: float = math.inf) -> np.ndarray:
    """Minimum clearance of each of N (m, 2) position sequences, -inf for a sequence that leaves the grid.

    One nearest-neighbour query covers every position of every sequence.
    """
    positions = np.asarray(positions, dtype=float)
    count, length = positions.shape[:2]
    flat = positions.reshape(-1, 2)
    _, inside = grid.cell_indices(flat)
    distances = np.full(len(flat), -np.inf)
    if inside.any():
        distances[inside] = clearances(grid, flat[inside], max_radius)
    return distances.reshape(count, length).min(axis=1)


def admissible_mask(
    speeds: np.ndarray, min_clearances: np.ndarray, config: DwaConfig, robot_radius: float
) -> np.ndarray:
    speeds = np.asarray(speeds, dtype=float)
    min_clearances = np.asarray(min_clearances, dtype=float)
    collision_free = min_clearances >= robot_radius
    margins = np.where(collision_free, min_clearances - robot_radius, 0.0)
    return collision_free & (speeds**2 <= 2.0 * config.a_v * margins)


def admissible(
    candidate: TrajectoryCandidate, grid: OccupancyGrid, config: DwaConfig, robot_radius: float | None = None
) -> bool:
    """Collision free at every state, and the robot can brake at a_v before the nearest obstacle."""
    robot_radius = config.robot_radius if robot_radius is None else robot_radius
    min_clearance = trajectory_clearances(candidate.positions[None], grid)
    return bool(admissible_mask([candidate.command.v], min_clearance, config, robot_radius)[0])
