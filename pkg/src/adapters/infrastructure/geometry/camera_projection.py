import numpy as np

from domain.CameraIntrinsics import CameraIntrinsics
from domain.Pose3 import Pose3
from domain.errors import BehindCamera

MIN_DEPTH_M = 1e-6


def project_point(intrinsics: CameraIntrinsics, cam_from_world: Pose3, point) -> np.ndarray:
    point_camera = cam_from_world.transform(np.asarray(point, dtype=float))
    depth = point_camera[2]
    if depth <= MIN_DEPTH_M:
        raise BehindCamera(f"Point depth {depth:.3g} m is not in front of the camera")
    return np.array(
        [
            intrinsics.fx * point_camera[0] / depth + intrinsics.cx,
            intrinsics.fy * point_camera[1] / depth + intrinsics.cy,
        ]
    )


def project_camera_points(intrinsics: CameraIntrinsics, points_camera: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized pinhole projection of camera-frame points; returns (pixels, in_front mask)."""
    points_camera = np.atleast_2d(np.asarray(points_camera, dtype=float))
    depth = points_camera[:, 2]
    in_front = depth > MIN_DEPTH_M
    safe_depth = np.where(in_front, depth, 1.0)
    pixels = np.column_stack(
        [
            intrinsics.fx * points_camera[:, 0] / safe_depth + intrinsics.cx,
            intrinsics.fy * points_camera[:, 1] / safe_depth + intrinsics.cy,
        ]
    )
    return pixels, in_front


def unproject_ray(intrinsics: CameraIntrinsics, pixel) -> np.ndarray:
    return unproject_rays(intrinsics, np.asarray(pixel, dtype=float).reshape(1, 2))[0]


def unproject_rays(intrinsics: CameraIntrinsics, pixels: np.ndarray) -> np.ndarray:
    pixels = np.asarray(pixels, dtype=float)
    rays = np.stack(
        [
            (pixels[..., 0] - intrinsics.cx) / intrinsics.fx,
            (pixels[..., 1] - intrinsics.cy) / intrinsics.fy,
            np.ones(pixels.shape[:-1]),
        ],
        axis=-1,
    )
    return rays / np.linalg.norm(rays, axis=-1, keepdims=True)
