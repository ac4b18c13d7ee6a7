import numpy as np
import shapely

from domain.BoundingBox3D import BoundingBox3D
from domain.OccupancyGrid import OccupancyGrid


class WorldModel:
    def __init__(self, grid: OccupancyGrid, boxes: list[BoundingBox3D] | None = None, timestamp: float = 0.0):
        self.grid = grid
        self.boxes: list[BoundingBox3D] = list(boxes or [])
        self.timestamp = timestamp

    def footprint_cells(self, box: BoundingBox3D) -> np.ndarray:
        """Cells whose centre lies in the box footprint, plus the cell under the box centre."""
        footprint = box.footprint()
        min_x, min_y, max_x, max_y = footprint.bounds
        corner_cells, _ = self.grid.cell_indices(np.array([[min_x, min_y], [max_x, max_y]]))
        low = np.clip(corner_cells[0], 0, [self.grid.width - 1, self.grid.height - 1])
        high = np.clip(corner_cells[1], 0, [self.grid.width - 1, self.grid.height - 1])
        ix, iy = np.meshgrid(np.arange(low[0], high[0] + 1), np.arange(low[1], high[1] + 1))
        cells = np.column_stack([ix.ravel(), iy.ravel()])
        centers = self.grid.cell_centers(cells)
        cells = cells[shapely.contains_xy(footprint, centers[:, 0], centers[:, 1])]

        center_cell = self.grid.cell_of(box.center[:2])
        if center_cell is not None:
            cells = np.unique(np.vstack([cells, [center_cell]]), axis=0)
        return cells.reshape(-1, 2)

    def synchronize(self) -> "WorldModel":
        """Marks every box footprint Occupied in the grid."""
        occupied = self.grid.occupied_counts.astype(np.int32)
        for box in self.boxes:
            cells = self.footprint_cells(box)
            occupied[cells[:, 1], cells[:, 0]] = np.maximum(
                occupied[cells[:, 1], cells[:, 0]], self.grid.evidence_threshold
            )
        grid = self.grid.with_counts(self.grid.free_counts, np.minimum(occupied, 255))
        return WorldModel(grid, self.boxes, self.timestamp)
