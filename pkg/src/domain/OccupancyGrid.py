import numpy as np
from scipy.spatial import cKDTree

from domain.CellState import CellState
from domain.errors import MappingError

MAX_COUNT = 255
EVIDENCE_THRESHOLD = 2


class OccupancyGrid:
    """Bird's-eye grid of saturating Free/Occupied evidence counts.

    Cell (ix, iy) covers [origin + (ix, iy)·resolution, origin + (ix + 1, iy + 1)·resolution); count arrays are indexed
    [iy, ix]. Grids are never mutated: updates return new grids.
    """

    def __init__(
        self,
        resolution: float,
        width: int,
        height: int,
        origin: tuple[float, float] = (0.0, 0.0),
        free_counts: np.ndarray | None = None,
        occupied_counts: np.ndarray | None = None,
        evidence_threshold: int = EVIDENCE_THRESHOLD,
    ):
        if resolution <= 0 or width < 1 or height < 1:
            raise MappingError(f"Invalid grid geometry: {width}x{height} cells at {resolution} m")
        self.resolution = float(resolution)
        self.width = int(width)
        self.height = int(height)
        self.origin = (float(origin[0]), float(origin[1]))
        self.evidence_threshold = evidence_threshold
        self.free_counts = self._counts(free_counts)
        self.occupied_counts = self._counts(occupied_counts)
        self._states: np.ndarray | None = None
        self._occupied_tree: cKDTree | None = None

    def _counts(self, counts: np.ndarray | None) -> np.ndarray:
        if counts is None:
            counts = np.zeros((self.height, self.width), dtype=np.uint8)
        counts = np.array(counts, dtype=np.uint8)
        if counts.shape != (self.height, self.width):
            raise MappingError(f"Count array {counts.shape} does not match a {self.width}x{self.height} grid")
        counts.setflags(write=False)
        return counts

    @staticmethod
    def centered_on(x: float, y: float, resolution: float = 0.1, width: int = 400, height: int = 400, **kwargs):
        origin = (x - width * resolution / 2.0, y - height * resolution / 2.0)
        return OccupancyGrid(resolution, width, height, origin, **kwargs)

    def with_counts(self, free_counts: np.ndarray, occupied_counts: np.ndarray) -> "OccupancyGrid":
        return OccupancyGrid(
            self.resolution, self.width, self.height, self.origin, free_counts, occupied_counts, self.evidence_threshold
        )

    @property
    def states(self) -> np.ndarray:
        if self._states is None:
            states = np.full((self.height, self.width), CellState.UNKNOWN, dtype=np.uint8)
            states[self.free_counts >= self.evidence_threshold] = CellState.FREE
            states[self.occupied_counts >= self.evidence_threshold] = CellState.OCCUPIED
            states.setflags(write=False)
            self._states = states
        return self._states

    def state(self, cell: tuple[int, int]) -> CellState:
        return CellState(int(self.states[cell[1], cell[0]]))

    @property
    def center(self) -> tuple[float, float]:
        return (
            self.origin[0] + self.width * self.resolution / 2.0,
            self.origin[1] + self.height * self.resolution / 2.0,
        )

    def cell_indices(self, points_xy: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Returns (N×2 integer cells (ix, iy), inside mask)."""
        points_xy = np.asarray(points_xy, dtype=float).reshape(-1, 2)
        cells = np.floor((points_xy - np.array(self.origin)) / self.resolution).astype(np.int64)
        return cells, self.in_bounds(cells)

    def in_bounds(self, cells: np.ndarray) -> np.ndarray:
        cells = np.asarray(cells).reshape(-1, 2)
        return (cells[:, 0] >= 0) & (cells[:, 0] < self.width) & (cells[:, 1] >= 0) & (cells[:, 1] < self.height)

    def cell_of(self, position) -> tuple[int, int] | None:
        cells, inside = self.cell_indices(np.asarray(position, dtype=float)[:2])
        return (int(cells[0, 0]), int(cells[0, 1])) if inside[0] else None

    def contains(self, position) -> bool:
        return self.cell_of(position) is not None

    def cell_centers(self, cells: np.ndarray) -> np.ndarray:
        return np.array(self.origin) + (np.asarray(cells, dtype=float) + 0.5) * self.resolution

    def occupied_cells(self) -> np.ndarray:
        iy, ix = np.nonzero(self.states == CellState.OCCUPIED)
        return np.column_stack([ix, iy])

    @property
    def occupied_tree(self) -> cKDTree | None:
        if self._occupied_tree is None:
            occupied = self.occupied_cells()
            if len(occupied) == 0:
                return None
            self._occupied_tree = cKDTree(self.cell_centers(occupied))
        return self._occupied_tree

    def scroll_to(self, x: float, y: float) -> "OccupancyGrid":
        """Recentres on (x, y) by whole cells once the position leaves the central half of the window."""
        center_x, center_y = self.center
        half_x, half_y = self.width * self.resolution / 4, self.height * self.resolution / 4
        if abs(x - center_x) <= half_x and abs(y - center_y) <= half_y:
            return self

        shift_x = int(round((x - center_x) / self.resolution))
        shift_y = int(round((y - center_y) / self.resolution))
        origin = (self.origin[0] + shift_x * self.resolution, self.origin[1] + shift_y * self.resolution)
        return OccupancyGrid(
            self.resolution,
            self.width,
            self.height,
            origin,
            shift_counts(self.free_counts, shift_x, shift_y),
            shift_counts(self.occupied_counts, shift_x, shift_y),
            self.evidence_threshold,
        )

    def to_image(self) -> np.ndarray:
        """8-bit image, row 0 at the grid's max-y edge: 0 Unknown, 128 Free, 255 Occupied."""
        values = np.array([0, 128, 255], dtype=np.uint8)[self.states]
        return np.flipud(values)


def shift_counts(counts: np.ndarray, shift_x: int, shift_y: int) -> np.ndarray:
    height, width = counts.shape
    shifted = np.zeros_like(counts)
    if abs(shift_x) >= width or abs(shift_y) >= height:
        return shifted
    source_x = slice(max(shift_x, 0), width + min(shift_x, 0))
    source_y = slice(max(shift_y, 0), height + min(shift_y, 0))
    target_x = slice(max(-shift_x, 0), width + min(-shift_x, 0))
    target_y = slice(max(-shift_y, 0), height + min(-shift_y, 0))
    shifted[target_y, target_x] = counts[source_y, source_x]
    return shifted
