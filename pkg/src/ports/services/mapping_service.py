from abc import ABC, abstractmethod

from domain.CameraRig import CameraRig
from domain.RobotState import RobotState
from domain.SensorFrame import SensorFrame
from domain.WorldModel import WorldModel


class MappingService(ABC):
    @abstractmethod
    def reset(self, rig: CameraRig, x: float, y: float, lidar_height: float) -> None:
        pass

    @property
    @abstractmethod
    def world_model(self) -> WorldModel:
        pass

    @abstractmethod
    def update(self, state: RobotState, frame: SensorFrame) -> WorldModel:
        pass
