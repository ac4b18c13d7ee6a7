import numpy as np

from adapters.infrastructure.geometry.camera_projection import project_point, unproject_ray
from domain.CameraIntrinsics import CameraIntrinsics
from domain.Pose3 import Pose3
from domain.errors import BehindCamera, DegenerateBaseline, LandmarkRejected

MIN_BASELINE_M = 0.01
MIN_RAY_ANGLE_RAD = np.deg2rad(0.5)
MAX_REPROJECTION_PX = 2.0


def triangulate_landmark(
    obs_a: tuple[np.ndarray, Pose3],
    obs_b: tuple[np.ndarray, Pose3],
    intr: CameraIntrinsics,
    max_reprojection_px: float = MAX_REPROJECTION_PX,
) -> np.ndarray:
    """Midpoint of the shortest segment between two viewing rays.

    Each observation is (pixel, world_from_camera).
    """
    pixel_a, world_from_camera_a = obs_a
    pixel_b, world_from_camera_b = obs_b
    origin_a, origin_b = world_from_camera_a.translation, world_from_camera_b.translation

    if np.linalg.norm(origin_b - origin_a) < MIN_BASELINE_M:
        raise DegenerateBaseline(f"Baseline {np.linalg.norm(origin_b - origin_a):.4f} m is below {MIN_BASELINE_M} m")

    direction_a = world_from_camera_a.rotation @ unproject_ray(intr, pixel_a)
    direction_b = world_from_camera_b.rotation @ unproject_ray(intr, pixel_b)
    cos_angle = float(np.clip(direction_a @ direction_b, -1.0, 1.0))
    if np.arccos(cos_angle) < MIN_RAY_ANGLE_RAD:
        raise DegenerateBaseline(f"Rays are {np.rad2deg(np.arccos(cos_angle)):.3f} deg apart")

    offset = origin_a - origin_b
    d, e = direction_a @ offset, direction_b @ offset
    denominator = 1.0 - cos_angle**2
    depth_a = (cos_angle * e - d) / denominator
    depth_b = (e - cos_angle * d) / denominator
    if depth_a <= 0 or depth_b <= 0:
        raise BehindCamera("Triangulated point lies behind one of the cameras")

    point = 0.5 * (origin_a + depth_a * direction_a + origin_b + depth_b * direction_b)

    for pixel, world_from_camera in (obs_a, obs_b):
        error = np.linalg.norm(project_point(intr, world_from_camera.inverse(), point) - np.asarray(pixel, dtype=float))
        if error > max_reprojection_px:
            raise LandmarkRejected(f"Reprojection error {error:.2f} px exceeds {max_reprojection_px} px")

    return point
