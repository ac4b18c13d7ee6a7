import math

import numpy as np
from pydantic import BaseModel, Field

from domain.Obstacle import Obstacle
from domain.ReferenceTrajectory import ReferenceTrajectory

DEFAULT_ROUTE_LENGTH_M = 50.0
DEFAULT_WAYPOINT_SPACING_M = 1.0


def straight_route(length: float = DEFAULT_ROUTE_LENGTH_M, spacing: float = DEFAULT_WAYPOINT_SPACING_M):
    count = max(2, int(math.ceil(length / spacing)) + 1)
    return [(float(x), 0.0) for x in np.linspace(0.0, length, count)]


def circular_route(radius: float, spacing: float = DEFAULT_WAYPOINT_SPACING_M, center=(0.0, 0.0)):
    """Counter-clockwise loop starting at the bottom of the circle, heading +x."""
    count = max(8, int(math.ceil(2 * math.pi * radius / spacing)))
    angles = -math.pi / 2 + 2 * math.pi * np.arange(count) / count
    return [(center[0] + radius * math.cos(angle), center[1] + radius * math.sin(angle)) for angle in angles]


class SceneConfig(BaseModel):
    """Declarative world for simulation runs: route, obstacles, extra landmarks and start pose."""

    route: list[tuple[float, float]] = Field(default_factory=straight_route)
    target_speeds: list[float] | None = None
    closed_route: bool = False
    start: tuple[float, float, float] | None = None
    obstacles: list[Obstacle] = []
    landmarks: list[tuple[float, float, float]] = []

    def reference(self) -> ReferenceTrajectory:
        return ReferenceTrajectory(self.route, self.target_speeds, self.closed_route)

    def start_pose(self) -> tuple[float, float, float]:
        """The configured start, otherwise the first waypoint facing the second."""
        if self.start is not None:
            return self.start
        (x0, y0), (x1, y1) = self.route[0], self.route[1]
        return x0, y0, math.atan2(y1 - y0, x1 - x0)
