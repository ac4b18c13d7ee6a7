from abc import ABC, abstractmethod

from domain.CameraRig import CameraRig
from domain.ControlInput import ControlInput
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.Scene import Scene
from domain.SceneConfig import SceneConfig
from domain.SensorFrame import SensorFrame
from domain.SimState import SimState


class SimulationService(ABC):
    @abstractmethod
    def build_scene(self, scene_config: SceneConfig) -> Scene:
        pass

    @abstractmethod
    def initial_state(self, scene_config: SceneConfig) -> SimState:
        pass

    @abstractmethod
    def sense(self, scene: Scene, sim: SimState, rig: CameraRig, frame_index: int) -> SensorFrame:
        pass

    @abstractmethod
    def first_fix(self, sim: SimState) -> GpsFix | None:
        pass

    @abstractmethod
    def advance(self, sim: SimState, control: ControlInput) -> tuple[SimState, ImuSample, GpsFix | None]:
        pass
