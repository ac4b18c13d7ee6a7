from dataclasses import dataclass

import numpy as np

from domain.errors import OdometryError


@dataclass(frozen=True)
class ImuSample:
    linear_acceleration: tuple[float, float, float]
    angular_velocity: tuple[float, float, float]
    timestamp: float

    def __post_init__(self):
        values = [*self.linear_acceleration, *self.angular_velocity, self.timestamp]
        if len(values) != 7 or not np.all(np.isfinite(values)):
            raise OdometryError(f"IMU sample at {self.timestamp} holds non-finite or malformed values")

    @property
    def forward_acceleration(self) -> float:
        return float(self.linear_acceleration[0])

    @property
    def yaw_rate(self) -> float:
        return float(self.angular_velocity[2])
