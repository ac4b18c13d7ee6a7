import numpy as np

from adapters.infrastructure.geometry.unicycle import wrap_angle
from domain.ImuSample import ImuSample
from domain.Pose3 import Pose3
from domain.RobotState import RobotState
from domain.errors import NonPositiveDt

MAX_DT_S = 0.1


def imu_predict(state: RobotState, imu: ImuSample, dt: float, v_max: float = 1.5) -> RobotState:
    if not 0 < dt <= MAX_DT_S:
        raise NonPositiveDt(f"IMU step must satisfy 0 < dt <= {MAX_DT_S} s, got {dt}")

    v = float(np.clip(state.v + imu.forward_acceleration * dt, -v_max, v_max))
    yaw = wrap_angle(state.yaw + imu.yaw_rate * dt)
    x = state.x + state.v * dt * np.cos(yaw)
    y = state.y + state.v * dt * np.sin(yaw)
    return RobotState(Pose3.planar(x, y, yaw), v, imu.yaw_rate, state.timestamp + dt)
