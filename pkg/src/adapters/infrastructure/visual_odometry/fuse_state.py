import numpy as np

from adapters.infrastructure.geometry.unicycle import wrap_angle
from domain.GpsFix import GpsFix
from domain.OdometryConfig import OdometryConfig
from domain.Pose3 import Pose3
from domain.RobotState import RobotState
from domain.errors import StaleMeasurement


def vision_gain(pnp_inliers: int, config: OdometryConfig) -> float:
    return min(1.0, pnp_inliers / config.full_gain_inliers) * config.vision_gain


def gps_gain(horizontal_accuracy: float, config: OdometryConfig) -> float:
    sigma = config.gps_process_sigma
    return float(np.clip(sigma / (sigma + horizontal_accuracy), 0.0, config.max_gps_gain))


def check_epoch(predicted: RobotState, timestamp: float, config: OdometryConfig, source: str):
    if abs(predicted.timestamp - timestamp) > config.max_epoch_offset:
        raise StaleMeasurement(
            f"{source} at {timestamp:.3f} s is more than {config.max_epoch_offset} s from the prediction at "
            f"{predicted.timestamp:.3f} s"
        )


def fuse_state(
    predicted: RobotState,
    pnp_pose: Pose3 | None,
    pnp_inliers: int,
    gps: GpsFix | None,
    config: OdometryConfig = OdometryConfig(),
    measurement_time: float | None = None,
) -> RobotState:
    """Fixed-gain complementary blend of the IMU prediction with vision and GPS positions."""
    if measurement_time is not None:
        check_epoch(predicted, measurement_time, config, "Vision measurement")
    if gps is not None:
        check_epoch(predicted, gps.timestamp, config, "GPS fix")
    if pnp_pose is None and gps is None:
        return predicted

    x, y, yaw = predicted.x, predicted.y, predicted.yaw
    if pnp_pose is not None:
        gain = vision_gain(pnp_inliers, config)
        x += gain * (pnp_pose.x - x)
        y += gain * (pnp_pose.y - y)
        yaw = wrap_angle(yaw + gain * wrap_angle(pnp_pose.yaw - yaw))
    if gps is not None:
        gain = gps_gain(gps.horizontal_accuracy, config)
        x += gain * (gps.position[0] - x)
        y += gain * (gps.position[1] - y)

    return RobotState(Pose3.planar(x, y, yaw), predicted.v, predicted.omega, predicted.timestamp)
