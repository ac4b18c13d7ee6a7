import numpy as np

from domain.OccupancyGrid import MAX_COUNT, OccupancyGrid
from domain.Pose3 import Pose3

MIN_OBSTACLE_HEIGHT_M = 0.1
MAX_OBSTACLE_HEIGHT_M = 2.5


def add_evidence(counts: np.ndarray, cells: np.ndarray) -> np.ndarray:
    totals = counts.astype(np.int32)
    np.add.at(totals, (cells[:, 1], cells[:, 0]), 1)
    return np.minimum(totals, MAX_COUNT).astype(np.uint8)


def update_grid(
    grid: OccupancyGrid,
    free_evidence: list,
    obstacle_points: np.ndarray,
    robot_pose: Pose3,
    min_height: float = MIN_OBSTACLE_HEIGHT_M,
    max_height: float = MAX_OBSTACLE_HEIGHT_M,
) -> OccupancyGrid:
    """Counts one piece of evidence per entry; heights are measured from the ground under the robot.

    free_evidence holds cells (ix, iy), optionally paired with a state as returned by ground_cells_from_semantics.
    Out-of-grid evidence is dropped.
    """
    free_cells = np.array(
        [entry[0] if isinstance(entry[0], tuple) else entry for entry in free_evidence], dtype=np.int64
    ).reshape(-1, 2)
    free_inside = grid.in_bounds(free_cells)

    points = np.asarray(obstacle_points, dtype=float).reshape(-1, 3)
    heights = points[:, 2] - robot_pose.translation[2]
    obstacles = points[(heights > min_height) & (heights < max_height)]
    obstacle_cells, obstacle_inside = grid.cell_indices(obstacles[:, :2])

    return grid.with_counts(
        add_evidence(grid.free_counts, free_cells[free_inside]),
        add_evidence(grid.occupied_counts, obstacle_cells[obstacle_inside]),
    )
