from dataclasses import dataclass

from domain.errors import OdometryError


@dataclass(frozen=True)
class GpsFix:
    position: tuple[float, float]
    horizontal_accuracy: float
    timestamp: float

    def __post_init__(self):
        if not self.horizontal_accuracy > 0:
            raise OdometryError(f"GPS accuracy must be positive, got {self.horizontal_accuracy}")
