from pydantic import BaseModel, model_validator


class BoundingBox2D(BaseModel):
    """Inclusive pixel extent: x2 and y2 are the last covered column and row."""

    x1: int
    y1: int
    x2: int
    y2: int
    c: int
    instance_id: int = 0

    @model_validator(mode="after")
    def check_corners(self):
        if self.x1 > self.x2 or self.y1 > self.y2:
            raise ValueError(f"Box corners out of order: ({self.x1}, {self.y1}, {self.x2}, {self.y2})")
        return self

    @property
    def width(self) -> int:
        return self.x2 - self.x1 + 1

    @property
    def height(self) -> int:
        return self.y2 - self.y1 + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def iou(self, other: "BoundingBox2D") -> float:
        overlap_width = min(self.x2, other.x2) - max(self.x1, other.x1) + 1
        overlap_height = min(self.y2, other.y2) - max(self.y1, other.y1) + 1
        if overlap_width <= 0 or overlap_height <= 0:
            return 0.0
        intersection = overlap_width * overlap_height
        return intersection / (self.area + other.area - intersection)

    def __hash__(self):
        return hash((self.x1, self.y1, self.x2, self.y2, self.c, self.instance_id))
