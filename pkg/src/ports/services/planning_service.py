from abc import ABC, abstractmethod

from domain.OccupancyGrid import OccupancyGrid
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.RobotState import RobotState
from domain.TrajectoryCandidate import TrajectoryCandidate


class PlanningService(ABC):
    @abstractmethod
    def plan(
        self, state: RobotState, grid: OccupancyGrid, route: ReferenceTrajectory
    ) -> tuple[TrajectoryCandidate, list[TrajectoryCandidate]]:
        pass
