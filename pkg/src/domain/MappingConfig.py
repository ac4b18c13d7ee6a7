from pydantic import BaseModel, Field


class MappingConfig(BaseModel):
    traversable_classes: list[int]
    resolution: float = Field(0.1, gt=0)
    width: int = Field(400, ge=1)
    height: int = Field(400, ge=1)
    pixel_stride: int = Field(4, ge=1)
    max_range: float = Field(20.0, gt=0)
    min_obstacle_height: float = 0.1
    max_obstacle_height: float = 2.5
    evidence_threshold: int = Field(2, ge=1)
    min_lidar_depth: float = Field(0.1, ge=0)
    median_depth_gate: float = Field(1.5, gt=0)
    min_box_points: int = Field(5, ge=1)
