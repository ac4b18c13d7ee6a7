import numpy as np

from adapters.infrastructure.geometry.camera_projection import unproject_rays
from adapters.infrastructure.geometry.ray_ground_intersection import rays_ground_intersection
from domain.CameraIntrinsics import CameraIntrinsics
from domain.CellState import CellState
from domain.GroundPlane import GroundPlane
from domain.OccupancyGrid import OccupancyGrid
from domain.Pose3 import Pose3
from domain.SemanticMap import SemanticMap
from domain.errors import CameraBelowGround

PIXEL_STRIDE = 4
MAX_RANGE_M = 20.0


def ground_cells_from_semantics(
    sem: SemanticMap,
    traversable_classes: set[int],
    camera: tuple[CameraIntrinsics, Pose3],
    plane: GroundPlane,
    grid: OccupancyGrid,
    stride: int = PIXEL_STRIDE,
    max_range: float = MAX_RANGE_M,
) -> list[tuple[tuple[int, int], CellState]]:
    """Free evidence from traversable pixels reprojected onto the ground; the grid itself is not touched."""
    intrinsics, world_from_camera = camera
    origin = world_from_camera.translation
    if plane.signed_height(origin) <= 0:
        raise CameraBelowGround(f"Camera at {origin} is not above the ground plane")

    rows, cols = np.mgrid[0 : sem.height : stride, 0 : sem.width : stride]
    traversable = np.isin(sem.classes[rows, cols], list(traversable_classes))
    if not traversable.any():
        return []

    pixels = np.column_stack([cols[traversable], rows[traversable]]).astype(float)
    directions = unproject_rays(intrinsics, pixels) @ world_from_camera.rotation.T
    points, valid = rays_ground_intersection(origin, directions, plane)

    horizontal = points - origin
    horizontal -= np.outer(horizontal @ plane.normal, plane.normal)
    valid &= np.linalg.norm(horizontal, axis=1) <= max_range

    cells, inside = grid.cell_indices(points[valid][:, :2])
    unique_cells = np.unique(cells[inside], axis=0)
    return [((int(ix), int(iy)), CellState.FREE) for ix, iy in unique_cells]
