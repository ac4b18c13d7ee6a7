import numpy as np

from domain.GroundPlane import GroundPlane
from domain.errors import NoIntersection

PARALLEL_TOLERANCE = 1e-9


def ray_ground_intersection(ray_world_origin, ray_world_dir, plane: GroundPlane) -> np.ndarray:
    origin = np.asarray(ray_world_origin, dtype=float)
    direction = np.asarray(ray_world_dir, dtype=float)
    denominator = float(plane.normal @ direction)
    if abs(denominator) < PARALLEL_TOLERANCE:
        raise NoIntersection("Ray is parallel to the ground plane")

    distance = (plane.offset - float(plane.normal @ origin)) / denominator
    if distance <= 0:
        raise NoIntersection("Ground intersection lies behind the ray origin")
    return origin + distance * direction


def rays_ground_intersection(
    origin: np.ndarray, directions: np.ndarray, plane: GroundPlane
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized form for one origin and many directions; returns (points, valid mask)."""
    directions = np.asarray(directions, dtype=float)
    denominator = directions @ plane.normal
    valid = np.abs(denominator) >= PARALLEL_TOLERANCE
    distance = np.where(valid, (plane.offset - float(plane.normal @ origin)) / np.where(valid, denominator, 1.0), -1.0)
    valid &= distance > 0
    points = origin + distance[..., None] * directions
    return points, valid
