import numpy as np

from adapters.infrastructure.geometry.camera_projection import project_camera_points
from domain.CameraRig import CameraRig
from domain.LidarProjection import LidarProjection
from domain.PointCloud import PointCloud
from domain.Pose3 import Pose3

MIN_DEPTH_M = 0.1


def project_lidar_to_image(
    cloud: PointCloud, sensor_from_body: Pose3, rig: CameraRig, body_pose: Pose3, min_depth: float = MIN_DEPTH_M
) -> list[LidarProjection]:
    """One entry per (point, camera) pair that lands in the image in front of the camera, ordered by point index."""
    if len(cloud) == 0:
        return []

    points_body = sensor_from_body.inverse().transform(cloud.points)
    points_world = body_pose.transform(points_body)

    hits = []
    for camera_index, camera in enumerate(rig):
        points_camera = camera.camera_from_body.transform(points_body)
        pixels, _ = project_camera_points(camera.intrinsics, points_camera)
        visible = (points_camera[:, 2] > min_depth) & camera.intrinsics.contains(pixels)
        for point_index in np.nonzero(visible)[0]:
            hits.append(
                LidarProjection(
                    int(point_index),
                    camera_index,
                    pixels[point_index],
                    float(points_camera[point_index, 2]),
                    points_world[point_index],
                )
            )
    return sorted(hits, key=lambda hit: (hit.point_index, hit.camera_index))
