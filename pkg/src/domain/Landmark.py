from dataclasses import dataclass

import numpy as np

from domain.errors import OdometryError


@dataclass(frozen=True, eq=False)
class Landmark:
    id: int
    position: np.ndarray
    observation_count: int = 2
    camera_index: int = 0

    def __post_init__(self):
        position = np.array(self.position, dtype=float).reshape(3)
        if not np.all(np.isfinite(position)):
            raise OdometryError(f"Landmark {self.id} has a non-finite position")
        if self.observation_count < 2:
            raise OdometryError(f"Landmark {self.id} needs at least two observations")
        position.setflags(write=False)
        object.__setattr__(self, "position", position)

    def observed_again(self) -> "Landmark":
        return Landmark(self.id, self.position, self.observation_count + 1, self.camera_index)

    @property
    def key(self) -> tuple[int, int]:
        return self.camera_index, self.id
