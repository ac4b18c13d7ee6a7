import numpy as np

from domain.GroundPlane import GroundPlane
from domain.Obstacle import Obstacle
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.errors import SimulationError

BACKGROUND_INTENSITY = 60.0


class Scene:
    """Immutable synthetic world: textured flat ground, point features and upright obstacles."""

    def __init__(
        self,
        obstacles: list[Obstacle] = (),
        route: ReferenceTrajectory | None = None,
        ground: GroundPlane | None = None,
        dots: np.ndarray | None = None,
        dot_intensities: np.ndarray | None = None,
        landmarks: np.ndarray | None = None,
        landmark_intensities: np.ndarray | None = None,
        background: float = BACKGROUND_INTENSITY,
        seed: int = 0,
    ):
        instance_ids = [obstacle.instance_id for obstacle in obstacles]
        if len(set(instance_ids)) != len(instance_ids):
            raise SimulationError(f"Obstacle instance ids must be unique, got {instance_ids}")
        self.obstacles: tuple[Obstacle, ...] = tuple(obstacles)
        self.route = route
        self.ground = ground or GroundPlane()
        self.dots, self.dot_intensities = self._points(dots, dot_intensities)
        self.landmarks, self.landmark_intensities = self._points(landmarks, landmark_intensities)
        self.background = float(background)
        self.seed = seed

    @staticmethod
    def _points(points, intensities) -> tuple[np.ndarray, np.ndarray]:
        points = np.zeros((0, 3)) if points is None else np.array(points, dtype=float).reshape(-1, 3)
        intensities = np.full(len(points), 150.0) if intensities is None else np.array(intensities, dtype=float)
        if intensities.shape != (len(points),):
            raise SimulationError(f"Expected {len(points)} intensities, got {intensities.shape}")
        points.setflags(write=False)
        intensities.setflags(write=False)
        return points, intensities

    def obstacle_by_instance(self, instance_id: int) -> Obstacle | None:
        return next((obstacle for obstacle in self.obstacles if obstacle.instance_id == instance_id), None)
