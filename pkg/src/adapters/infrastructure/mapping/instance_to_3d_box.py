import numpy as np

from domain.BoundingBox2D import BoundingBox2D
from domain.BoundingBox3D import BoundingBox3D
from domain.InstanceMap import InstanceMap
from domain.LidarProjection import LidarProjection
from domain.PointCloud import PointCloud

MEDIAN_DEPTH_GATE_M = 1.5
MIN_POINTS = 5
MIN_HALF_EXTENT_M = 1e-3


def instance_to_3d_box(
    inst: InstanceMap,
    boxes2d: list[BoundingBox2D],
    projected: list[LidarProjection],
    cloud: PointCloud,
    camera_index: int | None = None,
    median_depth_gate: float = MEDIAN_DEPTH_GATE_M,
    min_points: int = MIN_POINTS,
) -> list[BoundingBox3D]:
    """Axis-aligned boxes around the Lidar points that land on each instance mask.

    cloud is the world-frame sweep the projections index into; camera_index restricts the projections to the camera
    the instance map belongs to.
    """
    hits = [hit for hit in projected if camera_index is None or hit.camera_index == camera_index]
    if not hits or not boxes2d:
        return []

    pixels = np.rint(np.array([hit.pixel for hit in hits])).astype(np.int64)
    pixels[:, 0] = np.clip(pixels[:, 0], 0, inst.width - 1)
    pixels[:, 1] = np.clip(pixels[:, 1], 0, inst.height - 1)
    depths = np.array([hit.depth for hit in hits])
    point_indices = np.array([hit.point_index for hit in hits])
    instance_at_hit = inst.ids[pixels[:, 1], pixels[:, 0]]

    boxes3d = []
    for box in boxes2d:
        on_mask = (
            (instance_at_hit == box.instance_id)
            & (pixels[:, 0] >= box.x1)
            & (pixels[:, 0] <= box.x2)
            & (pixels[:, 1] >= box.y1)
            & (pixels[:, 1] <= box.y2)
        )
        if on_mask.sum() < min_points:
            continue
        box_depths = depths[on_mask]
        kept = np.abs(box_depths - np.median(box_depths)) <= median_depth_gate
        if kept.sum() < min_points:
            continue

        support = cloud.points[point_indices[on_mask][kept]]
        low, high = support.min(axis=0), support.max(axis=0)
        boxes3d.append(
            BoundingBox3D(
                center=tuple((low + high) / 2.0),
                extents=tuple(np.maximum((high - low) / 2.0, MIN_HALF_EXTENT_M)),
                yaw=0.0,
                class_id=box.c,
                instance_id=box.instance_id,
                camera_index=camera_index,
            )
        )
    return boxes3d
