from abc import ABC, abstractmethod

from domain.CameraRig import CameraRig
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.RobotState import RobotState
from domain.TrackSet import TrackSet


class OdometryService(ABC):
    @abstractmethod
    def reset(self, initial: RobotState, rig: CameraRig) -> None:
        pass

    @property
    @abstractmethod
    def state(self) -> RobotState:
        pass

    @abstractmethod
    def predict(self, imu: ImuSample, dt: float) -> RobotState:
        pass

    @abstractmethod
    def correct_gps(self, fix: GpsFix) -> RobotState:
        pass

    @abstractmethod
    def correct_vision(self, track_sets: list[TrackSet], timestamp: float) -> tuple[RobotState, int]:
        pass
