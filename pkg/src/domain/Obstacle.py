from enum import StrEnum

from pydantic import BaseModel, Field, model_validator

from domain.BoundingBox3D import BoundingBox3D


class ObstacleShape(StrEnum):
    CYLINDER = "cylinder"
    BOX = "box"


class Obstacle(BaseModel):
    """Upright volume standing on the ground: a vertical cylinder or a yawed box."""

    shape: ObstacleShape
    center: tuple[float, float]
    height: float = Field(gt=0)
    class_id: int = Field(ge=1)
    instance_id: int = Field(ge=1)
    radius: float = 0.0
    half_size: tuple[float, float] = (0.0, 0.0)
    yaw: float = 0.0
    intensity: float = Field(150.0, ge=0, le=255)

    @model_validator(mode="after")
    def check_footprint(self):
        if self.shape == ObstacleShape.CYLINDER and self.radius <= 0:
            raise ValueError("Cylinder obstacles need a positive radius")
        if self.shape == ObstacleShape.BOX and min(self.half_size) <= 0:
            raise ValueError("Box obstacles need positive half sizes")
        return self

    @staticmethod
    def cylinder(x: float, y: float, radius: float, height: float, class_id: int, instance_id: int, **kwargs):
        return Obstacle(
            shape=ObstacleShape.CYLINDER,
            center=(x, y),
            radius=radius,
            height=height,
            class_id=class_id,
            instance_id=instance_id,
            **kwargs,
        )

    @staticmethod
    def box(x: float, y: float, half_size, height: float, class_id: int, instance_id: int, yaw: float = 0.0, **kwargs):
        return Obstacle(
            shape=ObstacleShape.BOX,
            center=(x, y),
            half_size=tuple(half_size),
            yaw=yaw,
            height=height,
            class_id=class_id,
            instance_id=instance_id,
            **kwargs,
        )

    def bounding_box(self) -> BoundingBox3D:
        half_x, half_y = (self.radius, self.radius) if self.shape == ObstacleShape.CYLINDER else self.half_size
        return BoundingBox3D(
            center=(self.center[0], self.center[1], self.height / 2.0),
            extents=(half_x, half_y, self.height / 2.0),
            yaw=self.yaw,
            class_id=self.class_id,
            instance_id=self.instance_id,
        )
