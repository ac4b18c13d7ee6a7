import numpy as np

from adapters.infrastructure.control.track_step import track_step
from domain.ControlInput import ControlInput
from domain.NmpcConfig import NmpcConfig
from domain.NmpcSolution import NmpcSolution
from domain.RobotState import RobotState
from domain.TrajectoryCandidate import TrajectoryCandidate
from ports.services.control_service import ControlService


class ControlServiceAdapter(ControlService):
    """NMPC tracking of the latest planned candidate, warm-started from the previous solution."""

    def __init__(self, config: NmpcConfig = NmpcConfig()):
        self.config = config
        self.warm_start: np.ndarray | None = None

    def reset(self) -> None:
        self.warm_start = None

    def step(
        self, state: RobotState, selected: TrajectoryCandidate, planned_at: float
    ) -> tuple[ControlInput, NmpcSolution | None]:
        elapsed = max(0.0, state.timestamp - planned_at)
        control, self.warm_start, solution = track_step(state, selected, self.warm_start, self.config, elapsed)
        return control, solution
