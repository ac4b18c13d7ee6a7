import numpy as np

from domain.CellState import CellState
from domain.OccupancyGrid import OccupancyGrid
from domain.errors import OutOfGrid


def clearances(grid: OccupancyGrid, positions: np.ndarray, max_radius: float) -> np.ndarray:
    """Vectorized clearance; raises OutOfGrid if any position lies outside the grid."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    cells, inside = grid.cell_indices(positions)
    if not inside.all():
        raise OutOfGrid(f"Position {positions[~inside][0]} lies outside the grid")

    tree = grid.occupied_tree
    if tree is None:
        return np.full(len(positions), float(max_radius))
    distances, _ = tree.query(positions)
    distances = np.minimum(distances, max_radius)
    on_occupied = grid.states[cells[:, 1], cells[:, 0]] == CellState.OCCUPIED
    return np.where(on_occupied, 0.0, distances)


def clearance_query(grid: OccupancyGrid, position, max_radius: float) -> float:
    """Distance to the nearest Occupied cell centre, capped at max_radius; Unknown counts as Free."""
    return float(clearances(grid, np.asarray(position, dtype=float)[:2], max_radius)[0])
