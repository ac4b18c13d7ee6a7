from abc import ABC, abstractmethod

from domain.ControlInput import ControlInput
from domain.NmpcSolution import NmpcSolution
from domain.RobotState import RobotState
from domain.TrajectoryCandidate import TrajectoryCandidate


class ControlService(ABC):
    @abstractmethod
    def reset(self) -> None:
        pass

    @abstractmethod
    def step(
        self, state: RobotState, selected: TrajectoryCandidate, planned_at: float
    ) -> tuple[ControlInput, NmpcSolution | None]:
        pass
