import numpy as np

from domain.GroundPlane import GroundPlane
from domain.Obstacle import Obstacle, ObstacleShape
from domain.Scene import Scene

MIN_DISTANCE = 1e-9


def ground_distances(origins: np.ndarray, directions: np.ndarray, plane: GroundPlane) -> np.ndarray:
    """Distance along each unit ray to the plane; inf where the ray never reaches it."""
    denominator = directions @ plane.normal
    heights = plane.offset - origins @ plane.normal
    with np.errstate(divide="ignore", invalid="ignore"):
        distances = heights / denominator
    return np.where((denominator < 0) & (distances > MIN_DISTANCE), distances, np.inf)


def cylinder_distances(origins: np.ndarray, directions: np.ndarray, obstacle: Obstacle) -> np.ndarray:
    relative = origins[:, :2] - np.asarray(obstacle.center)
    a = np.einsum("ij,ij->i", directions[:, :2], directions[:, :2])
    b = 2.0 * np.einsum("ij,ij->i", relative, directions[:, :2])
    c = np.einsum("ij,ij->i", relative, relative) - obstacle.radius**2
    discriminant = b * b - 4.0 * a * c
    with np.errstate(divide="ignore", invalid="ignore"):
        side = (-b - np.sqrt(discriminant)) / (2.0 * a)
        top = (obstacle.height - origins[:, 2]) / directions[:, 2]
    side_z = origins[:, 2] + side * directions[:, 2]
    side_ok = (a > 0) & (discriminant >= 0) & (side > MIN_DISTANCE) & (side_z >= 0) & (side_z <= obstacle.height)

    top_xy = relative + top[:, None] * directions[:, :2]
    within_cap = np.einsum("ij,ij->i", top_xy, top_xy) <= obstacle.radius**2
    top_ok = (directions[:, 2] < 0) & (top > MIN_DISTANCE) & within_cap
    return np.minimum(np.where(side_ok, side, np.inf), np.where(top_ok, top, np.inf))


def box_distances(origins: np.ndarray, directions: np.ndarray, obstacle: Obstacle) -> np.ndarray:
    """Slab test in the box frame; the box spans [0, height] in z."""
    cos_yaw, sin_yaw = np.cos(obstacle.yaw), np.sin(obstacle.yaw)
    to_box = np.array([[cos_yaw, sin_yaw, 0.0], [-sin_yaw, cos_yaw, 0.0], [0.0, 0.0, 1.0]])
    local_origins = (origins - [obstacle.center[0], obstacle.center[1], 0.0]) @ to_box.T
    local_directions = directions @ to_box.T
    lower = np.array([-obstacle.half_size[0], -obstacle.half_size[1], 0.0])
    upper = np.array([obstacle.half_size[0], obstacle.half_size[1], obstacle.height])

    with np.errstate(divide="ignore", invalid="ignore"):
        first = (lower - local_origins) / local_directions
        second = (upper - local_origins) / local_directions
    parallel = local_directions == 0
    outside = parallel & ((local_origins < lower) | (local_origins > upper))
    first = np.where(parallel, -np.inf, first)
    second = np.where(parallel, np.inf, second)
    near = np.max(np.minimum(first, second), axis=1)
    far = np.min(np.maximum(first, second), axis=1)
    hit = ~outside.any(axis=1) & (near <= far) & (near > MIN_DISTANCE)
    return np.where(hit, near, np.inf)


def obstacle_distances(origins: np.ndarray, directions: np.ndarray, obstacles) -> tuple[np.ndarray, np.ndarray]:
    """(nearest obstacle distance, obstacle index or -1) per ray."""
    nearest = np.full(len(directions), np.inf)
    index = np.full(len(directions), -1)
    for position, obstacle in enumerate(obstacles):
        if obstacle.shape == ObstacleShape.CYLINDER:
            distances = cylinder_distances(origins, directions, obstacle)
        else:
            distances = box_distances(origins, directions, obstacle)
        closer = distances < nearest
        nearest[closer] = distances[closer]
        index[closer] = position
    return nearest, index


def cast_rays(scene: Scene, origins: np.ndarray, directions: np.ndarray):
    """Returns (ground distance, obstacle distance, obstacle index) per ray."""
    directions = np.asarray(directions, dtype=float).reshape(-1, 3)
    origins = np.broadcast_to(np.asarray(origins, dtype=float), directions.shape)
    ground = ground_distances(origins, directions, scene.ground)
    nearest, index = obstacle_distances(origins, directions, scene.obstacles)
    return ground, nearest, index
