from dataclasses import dataclass

from domain.Pose3 import Pose3


@dataclass(frozen=True)
class RobotState:
    pose: Pose3
    v: float = 0.0
    omega: float = 0.0
    timestamp: float = 0.0

    @staticmethod
    def at_rest(x: float = 0.0, y: float = 0.0, yaw: float = 0.0, timestamp: float = 0.0):
        return RobotState(Pose3.planar(x, y, yaw), 0.0, 0.0, timestamp)

    @property
    def x(self) -> float:
        return self.pose.x

    @property
    def y(self) -> float:
        return self.pose.y

    @property
    def yaw(self) -> float:
        return self.pose.yaw
