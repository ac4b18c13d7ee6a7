from abc import ABC, abstractmethod
from pathlib import Path

import pandas as pd

from domain.CameraRig import CameraRig
from domain.DatasetManifest import DatasetManifest
from domain.GrayImage import GrayImage
from domain.InstanceMap import InstanceMap
from domain.OccupancyGrid import OccupancyGrid
from domain.PointCloud import PointCloud
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.SemanticMap import SemanticMap


class DatasetRepository(ABC):
    @abstractmethod
    def save_calibration(self, directory: Path, rig: CameraRig) -> Path:
        pass

    @abstractmethod
    def load_calibration(self, path: Path) -> CameraRig:
        pass

    @abstractmethod
    def save_frame(self, directory: Path, camera_index: int, frame_index: int, image: GrayImage) -> Path:
        pass

    @abstractmethod
    def load_frame(self, directory: Path, camera_index: int, frame_index: int) -> GrayImage:
        pass

    @abstractmethod
    def save_labels(
        self, directory: Path, camera_index: int, frame_index: int, semantic: SemanticMap, instance: InstanceMap
    ) -> tuple[Path, Path]:
        pass

    @abstractmethod
    def load_labels(
        self, directory: Path, camera_index: int, frame_index: int, num_classes: int
    ) -> tuple[SemanticMap, InstanceMap] | None:
        pass

    @abstractmethod
    def load_label_maps(self, semantic_path: Path, instance_path: Path, num_classes: int):
        pass

    @abstractmethod
    def save_sweep(self, directory: Path, sweep_index: int, cloud: PointCloud) -> Path:
        pass

    @abstractmethod
    def load_sweep(self, directory: Path, sweep_index: int, timestamp: float = 0.0) -> PointCloud:
        pass

    @abstractmethod
    def save_table(self, path: Path, table: pd.DataFrame) -> Path:
        pass

    @abstractmethod
    def load_table(self, path: Path, columns: list[str]) -> pd.DataFrame:
        pass

    @abstractmethod
    def save_route(self, path: Path, route: ReferenceTrajectory) -> Path:
        pass

    @abstractmethod
    def load_route(self, path: Path) -> ReferenceTrajectory:
        pass

    @abstractmethod
    def save_manifest(self, directory: Path, manifest: DatasetManifest) -> Path:
        pass

    @abstractmethod
    def load_manifest(self, directory: Path) -> DatasetManifest:
        pass

    @abstractmethod
    def save_grid(self, path: Path, grid: OccupancyGrid) -> Path:
        pass

    @abstractmethod
    def save_text(self, path: Path, content: str) -> Path:
        pass
