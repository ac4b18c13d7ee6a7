from pathlib import Path

import cv2
import numpy as np
import pandas as pd
from PIL import Image
from pydantic import ValidationError

from domain.CameraRig import CameraRig
from domain.DatasetLayout import DatasetLayout
from domain.DatasetManifest import DatasetManifest
from domain.GrayImage import GrayImage
from domain.InstanceMap import InstanceMap
from domain.OccupancyGrid import OccupancyGrid
from domain.PointCloud import PointCloud
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.RigCalibration import RigCalibration
from domain.SemanticMap import SemanticMap
from domain.errors import IoFailure
from ports.repositories.dataset_repository import DatasetRepository

TABLE_FLOAT_FORMAT = "%.9f"
SWEEP_FLOAT_FORMAT = "%.6f"
MAX_LABEL_VALUE = np.iinfo(np.uint16).max


def write_image(path: Path, data: np.ndarray) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        written = cv2.imwrite(str(path), data)
    except (OSError, cv2.error) as error:
        raise IoFailure(f"Could not write image {path}: {error}") from error
    if not written:
        raise IoFailure(f"Could not write image {path}")
    return path


def read_image(path: Path) -> np.ndarray:
    if not path.exists():
        raise IoFailure(f"Missing image {path}")
    data = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if data is None:
        raise IoFailure(f"Could not decode image {path}")
    if data.ndim == 3:
        data = cv2.cvtColor(data, cv2.COLOR_BGR2GRAY)
    return data


def label_array(values: np.ndarray, name: str) -> np.ndarray:
    if values.size and values.max() > MAX_LABEL_VALUE:
        raise IoFailure(f"{name} values above {MAX_LABEL_VALUE} do not fit a 16-bit label PNG")
    return values.astype(np.uint16)


class FileSystemRepository(DatasetRepository):
    def save_calibration(self, directory: Path, rig: CameraRig) -> Path:
        calibration = RigCalibration.from_rig(rig).model_dump_json(indent=2)
        return self.save_text(Path(directory, DatasetLayout.CALIBRATION), calibration)

    def load_calibration(self, path: Path) -> CameraRig:
        path = Path(path)
        if path.is_dir():
            path = Path(path, DatasetLayout.CALIBRATION)
        if not path.exists():
            raise IoFailure(f"Missing calibration file {path}")
        try:
            return RigCalibration.model_validate_json(path.read_text()).to_rig()
        except ValidationError as error:
            raise IoFailure(f"Malformed calibration file {path}: {error}") from error

    def save_frame(self, directory: Path, camera_index: int, frame_index: int, image: GrayImage) -> Path:
        return write_image(Path(directory, DatasetLayout.frame_path(camera_index, frame_index)), image.data)

    def load_frame(self, directory: Path, camera_index: int, frame_index: int) -> GrayImage:
        data = read_image(Path(directory, DatasetLayout.frame_path(camera_index, frame_index)))
        if data.dtype != np.uint8:
            raise IoFailure(f"Frame {frame_index} of camera {camera_index} is not an 8-bit image")
        return GrayImage(data)

    def save_labels(
        self, directory: Path, camera_index: int, frame_index: int, semantic: SemanticMap, instance: InstanceMap
    ) -> tuple[Path, Path]:
        semantic_path, instance_path = DatasetLayout.label_paths(camera_index, frame_index)
        return (
            write_image(Path(directory, semantic_path), label_array(semantic.classes, "Semantic class")),
            write_image(Path(directory, instance_path), label_array(instance.ids, "Instance id")),
        )

    def load_labels(
        self, directory: Path, camera_index: int, frame_index: int, num_classes: int
    ) -> tuple[SemanticMap, InstanceMap] | None:
        semantic_path, instance_path = DatasetLayout.label_paths(camera_index, frame_index)
        semantic_path, instance_path = Path(directory, semantic_path), Path(directory, instance_path)
        if not semantic_path.exists() and not instance_path.exists():
            return None
        return self.load_label_maps(semantic_path, instance_path, num_classes)

    def load_label_maps(self, semantic_path: Path, instance_path: Path, num_classes: int):
        semantic = SemanticMap(read_image(Path(semantic_path)).astype(np.int32), num_classes)
        instance = InstanceMap(read_image(Path(instance_path)).astype(np.int64))
        return semantic, instance

    def save_sweep(self, directory: Path, sweep_index: int, cloud: PointCloud) -> Path:
        path = Path(directory, DatasetLayout.sweep_path(sweep_index))
        table = pd.DataFrame(cloud.points, columns=DatasetLayout.SWEEP_COLUMNS)
        return self._write_csv(path, table, SWEEP_FLOAT_FORMAT)

    def load_sweep(self, directory: Path, sweep_index: int, timestamp: float = 0.0) -> PointCloud:
        path = Path(directory, DatasetLayout.sweep_path(sweep_index))
        if not path.exists():
            raise IoFailure(f"Missing Lidar sweep {path}")
        table = self.load_table(path, DatasetLayout.SWEEP_COLUMNS)
        return PointCloud(table[DatasetLayout.SWEEP_COLUMNS].to_numpy(dtype=float), timestamp)

    def save_table(self, path: Path, table: pd.DataFrame) -> Path:
        return self._write_csv(Path(path), table, TABLE_FLOAT_FORMAT)

    def load_table(self, path: Path, columns: list[str]) -> pd.DataFrame:
        """A missing file reads as an empty table with the expected header."""
        path = Path(path)
        if not path.exists():
            return pd.DataFrame(columns=columns)
        try:
            table = pd.read_csv(path)
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as error:
            raise IoFailure(f"Malformed CSV {path}: {error}") from error
        missing = [column for column in columns if column not in table.columns]
        if missing:
            raise IoFailure(f"{path} lacks the columns {missing}")
        return table

    def save_route(self, path: Path, route: ReferenceTrajectory) -> Path:
        table = pd.DataFrame(route.waypoints, columns=DatasetLayout.ROUTE_COLUMNS[:2])
        if route.target_speeds is not None:
            table[DatasetLayout.ROUTE_COLUMNS[2]] = route.target_speeds
        return self.save_table(path, table)

    def load_route(self, path: Path) -> ReferenceTrajectory:
        path = Path(path)
        if not path.exists():
            raise IoFailure(f"Missing route file {path}")
        table = self.load_table(path, DatasetLayout.ROUTE_COLUMNS[:2])
        speeds_column = DatasetLayout.ROUTE_COLUMNS[2]
        speeds = table[speeds_column].to_numpy(dtype=float) if speeds_column in table.columns else None
        try:
            return ReferenceTrajectory(table[DatasetLayout.ROUTE_COLUMNS[:2]].to_numpy(dtype=float), speeds)
        except ValueError as error:
            raise IoFailure(f"Invalid route {path}: {error}") from error

    def save_manifest(self, directory: Path, manifest: DatasetManifest) -> Path:
        return self.save_text(Path(directory, DatasetLayout.MANIFEST), manifest.model_dump_json(indent=2))

    def load_manifest(self, directory: Path) -> DatasetManifest:
        path = Path(directory, DatasetLayout.MANIFEST)
        if not path.exists():
            raise IoFailure(f"Missing dataset manifest {path}")
        try:
            return DatasetManifest.model_validate_json(path.read_text())
        except ValidationError as error:
            raise IoFailure(f"Malformed manifest {path}: {error}") from error

    def save_grid(self, path: Path, grid: OccupancyGrid) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            Image.fromarray(grid.to_image()).save(path)
        except OSError as error:
            raise IoFailure(f"Could not write grid image {path}: {error}") from error
        sidecar = f"{grid.origin[0]:.6f} {grid.origin[1]:.6f} {grid.resolution:.6f} {grid.width} {grid.height}\n"
        self.save_text(path.with_suffix(".txt"), sidecar)
        return path

    def save_text(self, path: Path, content: str) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
        except OSError as error:
            raise IoFailure(f"Could not write {path}: {error}") from error
        return path

    @staticmethod
    def _write_csv(path: Path, table: pd.DataFrame, float_format: str) -> Path:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            table.to_csv(path, index=False, float_format=float_format, lineterminator="\n")
        except OSError as error:
            raise IoFailure(f"Could not write {path}: {error}") from error
        return path
