from dataclasses import dataclass

from domain.Pose3 import Pose3
from domain.RobotState import RobotState
from domain.errors import SimulationError

MAX_SLIP = 0.3


@dataclass(frozen=True)
class SimState:
    """Ground truth of the simulated platform; the planar pose is kept unwrapped as integrated."""

    x: float = 0.0
    y: float = 0.0
    yaw: float = 0.0
    v: float = 0.0
    omega: float = 0.0
    timestamp: float = 0.0
    slip_long: float = 0.0
    slip_lat: float = 0.0
    seed: int = 0
    step: int = 0

    def __post_init__(self):
        if not (0.0 <= self.slip_long <= MAX_SLIP and 0.0 <= self.slip_lat <= MAX_SLIP):
            raise SimulationError(f"Slip fractions must lie in [0, {MAX_SLIP}], got {self.slip_long}, {self.slip_lat}")

    @property
    def true_state(self) -> RobotState:
        return RobotState(Pose3.planar(self.x, self.y, self.yaw), self.v, self.omega, self.timestamp)

    @property
    def body_pose(self) -> Pose3:
        return Pose3.planar(self.x, self.y, self.yaw)
