from dataclasses import dataclass

import numpy as np

from domain.VelocityCommand import VelocityCommand


@dataclass
class TrajectoryCandidate:
    """Rollout of a constant command: states is an (n, 3) array of (x, y, yaw) sampled every dt_plan."""

    command: VelocityCommand
    states: np.ndarray
    score: float | None = None
    admissible: bool = False
    dt: float = 0.1

    def __post_init__(self):
        self.states = np.asarray(self.states, dtype=float).reshape(-1, 3)

    @property
    def positions(self) -> np.ndarray:
        return self.states[:, :2]

    @property
    def endpoint(self) -> np.ndarray:
        return self.states[-1]
