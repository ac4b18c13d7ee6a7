import numpy as np

from adapters.infrastructure.simworld.ray_casting import cast_rays
from domain.PointCloud import PointCloud
from domain.Pose3 import Pose3
from domain.Scene import Scene


def sensor_from_body(mount_height: float) -> Pose3:
    """Lidar axes aligned with the body, mounted mount_height above the body origin."""
    return Pose3(np.eye(3), [0.0, 0.0, -mount_height])


def beam_directions(channels: int, horizontal_step: float, min_elevation: float, max_elevation: float) -> np.ndarray:
    """Unit beams in the sensor frame, channel-major, azimuth from 0 degrees counter-clockwise."""
    elevations = np.deg2rad(np.linspace(min_elevation, max_elevation, channels))
    azimuths = np.deg2rad(np.arange(0.0, 360.0, horizontal_step))
    elevation, azimuth = np.meshgrid(elevations, azimuths, indexing="ij")
    return np.stack(
        [np.cos(elevation) * np.cos(azimuth), np.cos(elevation) * np.sin(azimuth), np.sin(elevation)], axis=-1
    ).reshape(-1, 3)


def synth_lidar(
    scene: Scene,
    body_pose: Pose3,
    channels: int = 40,
    horizontal_step: float = 0.5,
    max_range: float = 30.0,
    mount_height: float = 0.8,
    min_elevation: float = -25.0,
    max_elevation: float = 15.0,
    timestamp: float = 0.0,
) -> PointCloud:
    """Nearest surface hit per beam within max_range, in the sensor frame."""
    world_from_sensor = body_pose.compose(sensor_from_body(mount_height).inverse())
    beams = beam_directions(channels, horizontal_step, min_elevation, max_elevation)
    directions = beams @ world_from_sensor.rotation.T
    ground, obstacle, _ = cast_rays(scene, world_from_sensor.translation, directions)
    distances = np.minimum(ground, obstacle)
    hit = distances <= max_range
    return PointCloud(beams[hit] * distances[hit, None], timestamp)
