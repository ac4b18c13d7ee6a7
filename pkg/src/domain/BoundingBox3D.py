import numpy as np
from pydantic import BaseModel, model_validator
from shapely.geometry import Polygon


class BoundingBox3D(BaseModel):
    center: tuple[float, float, float]
    extents: tuple[float, float, float]
    yaw: float = 0.0
    class_id: int
    instance_id: int
    camera_index: int | None = None

    @model_validator(mode="after")
    def check_extents(self):
        if min(self.extents) <= 0:
            raise ValueError(f"Box half-sizes must be positive, got {self.extents}")
        return self

    def footprint(self) -> Polygon:
        cos_yaw, sin_yaw = np.cos(self.yaw), np.sin(self.yaw)
        half_x, half_y = self.extents[0], self.extents[1]
        corners = [(-half_x, -half_y), (half_x, -half_y), (half_x, half_y), (-half_x, half_y)]
        return Polygon(
            [
                (self.center[0] + cos_yaw * dx - sin_yaw * dy, self.center[1] + sin_yaw * dx + cos_yaw * dy)
                for dx, dy in corners
            ]
        )
