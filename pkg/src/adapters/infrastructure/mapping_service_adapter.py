from adapters.infrastructure.mapping.ground_cells_from_semantics import ground_cells_from_semantics
from adapters.infrastructure.mapping.instance_to_3d_box import instance_to_3d_box
from adapters.infrastructure.mapping.project_lidar_to_image import project_lidar_to_image
from adapters.infrastructure.mapping.update_grid import update_grid
from adapters.infrastructure.percepts.extract_boxes import extract_boxes
from adapters.infrastructure.simworld.synth_lidar import sensor_from_body
from configuration import pipeline_logger
from domain.BoundingBox3D import BoundingBox3D
from domain.CameraRig import CameraRig
from domain.GroundPlane import GroundPlane
from domain.MappingConfig import MappingConfig
from domain.OccupancyGrid import OccupancyGrid
from domain.PointCloud import PointCloud
from domain.RobotState import RobotState
from domain.SensorFrame import SensorFrame
from domain.WorldModel import WorldModel
from ports.services.mapping_service import MappingService


class MappingServiceAdapter(MappingService):
    """Robot-centred occupancy grid fed by traversable label pixels and Lidar, plus per-frame 3D instance boxes."""

    def __init__(self, config: MappingConfig, min_area: int = 20):
        self.config = config
        self.min_area = min_area
        self.plane = GroundPlane()
        self.rig: CameraRig | None = None
        self.sensor_from_body = sensor_from_body(0.8)
        self._world_model = self.empty_world(0.0, 0.0)

    def empty_world(self, x: float, y: float) -> WorldModel:
        config = self.config
        grid = OccupancyGrid.centered_on(
            x, y, config.resolution, config.width, config.height, evidence_threshold=config.evidence_threshold
        )
        return WorldModel(grid)

    def reset(self, rig: CameraRig, x: float, y: float, lidar_height: float) -> None:
        self.rig = rig
        self.sensor_from_body = sensor_from_body(lidar_height)
        self._world_model = self.empty_world(x, y)

    @property
    def world_model(self) -> WorldModel:
        return self._world_model

    def update(self, state: RobotState, frame: SensorFrame) -> WorldModel:
        config = self.config
        grid = self._world_model.grid.scroll_to(state.x, state.y)

        free_evidence = []
        for camera_index, camera in enumerate(self.rig):
            semantic, _ = frame.labels(camera_index)
            if semantic is None:
                continue
            free_evidence += ground_cells_from_semantics(
                semantic,
                set(config.traversable_classes),
                (camera.intrinsics, camera.world_from_camera(state.pose)),
                self.plane,
                grid,
                config.pixel_stride,
                config.max_range,
            )

        cloud = frame.cloud if frame.cloud is not None else PointCloud([])
        world_points = state.pose.transform(self.sensor_from_body.inverse().transform(cloud.points))
        grid = update_grid(
            grid, free_evidence, world_points, state.pose, config.min_obstacle_height, config.max_obstacle_height
        )

        boxes = self.instance_boxes(state, frame, cloud, PointCloud(world_points, cloud.timestamp))
        self._world_model = WorldModel(grid, boxes, frame.timestamp).synchronize()
        pipeline_logger.debug(
            f"Frame {frame.index}: {len(free_evidence)} free cells, {len(world_points)} Lidar points, "
            f"{len(boxes)} boxes"
        )
        return self._world_model

    def instance_boxes(
        self, state: RobotState, frame: SensorFrame, cloud: PointCloud, world_cloud: PointCloud
    ) -> list[BoundingBox3D]:
        if len(cloud) == 0:
            return []
        projected = None
        boxes = []
        for camera_index in range(self.rig.count):
            semantic, instance = frame.labels(camera_index)
            if semantic is None or instance is None:
                continue
            boxes2d = extract_boxes(instance, semantic, self.min_area)
            if not boxes2d:
                continue
            if projected is None:
                projected = project_lidar_to_image(
                    cloud, self.sensor_from_body, self.rig, state.pose, self.config.min_lidar_depth
                )
            boxes += instance_to_3d_box(
                instance,
                boxes2d,
                projected,
                world_cloud,
                camera_index,
                self.config.median_depth_gate,
                self.config.min_box_points,
            )
        return boxes
