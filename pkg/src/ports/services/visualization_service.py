from abc import ABC, abstractmethod
from pathlib import Path

from domain.GrayImage import GrayImage
from domain.SemanticMap import SemanticMap
from domain.StageTiming import StageTiming
from domain.TrackSet import TrackSet
from domain.WorldModel import WorldModel


class VisualizationService(ABC):
    @abstractmethod
    def save_overlay(
        self, path: Path, images: list[GrayImage], track_sets: list[TrackSet], semantics: list[SemanticMap | None]
    ) -> Path:
        pass

    @abstractmethod
    def save_world_model(self, path: Path, world_model: WorldModel, robot_xy: tuple[float, float]) -> Path:
        pass

    @abstractmethod
    def save_trajectory_plot(self, path: Path, route_xy, estimate_xy, truth_xy=None) -> Path:
        pass

    @abstractmethod
    def save_timing_plot(
        self, path: Path, durations_ms: dict[str, list[float]], timings: dict[str, StageTiming]
    ) -> Path:
        pass
