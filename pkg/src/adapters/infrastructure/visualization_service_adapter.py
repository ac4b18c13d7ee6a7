import colorsys
import math
from pathlib import Path

import cv2
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from PIL import Image, ImageDraw

from configuration import GROUND_CLASS_ID, STAGE_BUDGET_MS
from domain.GrayImage import GrayImage
from domain.SemanticMap import SemanticMap
from domain.StageTiming import StageTiming
from domain.TrackSet import TrackSet
from domain.WorldModel import WorldModel
from domain.errors import IoFailure
from ports.services.visualization_service import VisualizationService

GROUND_TINT_BGR = np.array([255.0, 96.0, 0.0])
GROUND_TINT_ALPHA = 0.35
TRAIL_LENGTH = 10
BOX_OUTLINE_RGB = (220, 40, 40)
ROBOT_RGB = (40, 160, 255)
GOLDEN_RATIO_CONJUGATE = 0.618033988749895


def track_color(track_id: int) -> tuple[int, int, int]:
    """Stable, well-spread BGR color per track id."""
    hue = (track_id * GOLDEN_RATIO_CONJUGATE) % 1.0
    red, green, blue = colorsys.hsv_to_rgb(hue, 0.85, 1.0)
    return int(255 * blue), int(255 * green), int(255 * red)


class VisualizationServiceAdapter(VisualizationService):
    def save_overlay(
        self, path: Path, images: list[GrayImage], track_sets: list[TrackSet], semantics: list[SemanticMap | None]
    ) -> Path:
        tiles = []
        for camera_index, image in enumerate(images):
            semantic = semantics[camera_index] if camera_index < len(semantics) else None
            track_set = track_sets[camera_index] if camera_index < len(track_sets) else None
            tiles.append(self._annotated_tile(image, track_set, semantic))
        mosaic = self._mosaic(tiles)
        return self._write_image(Path(path), mosaic)

    def _annotated_tile(self, image: GrayImage, track_set: TrackSet | None, semantic: SemanticMap | None):
        tile = cv2.cvtColor(image.data, cv2.COLOR_GRAY2BGR).astype(float)
        if semantic is not None and semantic.shape == image.data.shape:
            ground = semantic.classes == GROUND_CLASS_ID
            tile[ground] = (1 - GROUND_TINT_ALPHA) * tile[ground] + GROUND_TINT_ALPHA * GROUND_TINT_BGR
        tile = tile.astype(np.uint8)

        for track in track_set.active if track_set is not None else []:
            color = track_color(track.id)
            trail = np.rint(np.array(track.positions[-TRAIL_LENGTH:])).astype(np.int32)
            if len(trail) > 1:
                cv2.polylines(tile, [trail.reshape(-1, 1, 2)], False, color, 1, cv2.LINE_AA)
            cv2.circle(tile, tuple(int(value) for value in trail[-1]), 2, color, -1, cv2.LINE_AA)
        return tile

    @staticmethod
    def _mosaic(tiles: list[np.ndarray]) -> np.ndarray:
        if not tiles:
            return np.zeros((1, 1, 3), dtype=np.uint8)
        columns = math.ceil(math.sqrt(len(tiles)))
        rows = math.ceil(len(tiles) / columns)
        height = max(tile.shape[0] for tile in tiles)
        width = max(tile.shape[1] for tile in tiles)
        mosaic = np.zeros((rows * height, columns * width, 3), dtype=np.uint8)
        for index, tile in enumerate(tiles):
            row, column = divmod(index, columns)
            mosaic[row * height : row * height + tile.shape[0], column * width : column * width + tile.shape[1]] = tile
        return mosaic

    def save_world_model(self, path: Path, world_model: WorldModel, robot_xy: tuple[float, float]) -> Path:
        grid = world_model.grid
        image = Image.fromarray(grid.to_image()).convert("RGB")
        draw = ImageDraw.Draw(image)

        def to_pixel(x: float, y: float) -> tuple[float, float]:
            return (x - grid.origin[0]) / grid.resolution, grid.height - (y - grid.origin[1]) / grid.resolution

        for box in world_model.boxes:
            corners = [to_pixel(x, y) for x, y in box.footprint().exterior.coords]
            draw.line(corners, fill=BOX_OUTLINE_RGB, width=1)
        robot_x, robot_y = to_pixel(*robot_xy)
        draw.ellipse([robot_x - 3, robot_y - 3, robot_x + 3, robot_y + 3], outline=ROBOT_RGB, width=1)

        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            image.save(path)
        except OSError as error:
            raise IoFailure(f"Could not write world model image {path}: {error}") from error
        return path

    def save_trajectory_plot(self, path: Path, route_xy, estimate_xy, truth_xy=None) -> Path:
        figure, axis = plt.subplots(figsize=(8, 6))
        route_xy = np.asarray(route_xy, dtype=float).reshape(-1, 2)
        estimate_xy = np.asarray(estimate_xy, dtype=float).reshape(-1, 2)
        axis.plot(route_xy[:, 0], route_xy[:, 1], "k--", linewidth=1, label="route")
        if truth_xy is not None:
            truth_xy = np.asarray(truth_xy, dtype=float).reshape(-1, 2)
            axis.plot(truth_xy[:, 0], truth_xy[:, 1], color="tab:green", label="ground truth")
        axis.plot(estimate_xy[:, 0], estimate_xy[:, 1], color="tab:blue", label="estimate")
        axis.set_xlabel("x [m]")
        axis.set_ylabel("y [m]")
        axis.set_aspect("equal", adjustable="datalim")
        axis.grid(True, linewidth=0.3)
        axis.legend(loc="best")
        return self._save_figure(figure, Path(path))

    def save_timing_plot(
        self, path: Path, durations_ms: dict[str, list[float]], timings: dict[str, StageTiming]
    ) -> Path:
        stages = [stage for stage, durations in durations_ms.items() if durations]
        figure, axes = plt.subplots(len(stages) or 1, 1, figsize=(8, 2.2 * max(1, len(stages))), squeeze=False)
        for axis, stage in zip(axes[:, 0], stages):
            axis.hist(durations_ms[stage], bins=30, color="tab:blue")
            axis.axvline(STAGE_BUDGET_MS, color="tab:red", linestyle="--", linewidth=1)
            axis.set_title(f"{stage}: median {timings[stage].median_ms:.1f} ms", fontsize=9)
            axis.set_xlabel("ms")
        figure.tight_layout()
        return self._save_figure(figure, Path(path))

    @staticmethod
    def _save_figure(figure, path: Path) -> Path:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            figure.savefig(path, dpi=100)
        except OSError as error:
            raise IoFailure(f"Could not write plot {path}: {error}") from error
        finally:
            plt.close(figure)
        return path

    @staticmethod
    def _write_image(path: Path, image: np.ndarray) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        if not cv2.imwrite(str(path), image):
            raise IoFailure(f"Could not write overlay {path}")
        return path
