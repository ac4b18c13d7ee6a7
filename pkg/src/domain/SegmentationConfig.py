from pydantic import BaseModel, Field

from configuration import NUM_CLASSES
from domain.LossWeights import LossWeights

DEFAULT_IOU_THRESHOLDS = [round(0.5 + 0.05 * step, 2) for step in range(10)]


class SegmentationConfig(BaseModel):
    num_classes: int = Field(NUM_CLASSES, ge=1)
    min_area: int = Field(20, ge=1)
    loss_weights: LossWeights = LossWeights()
    iou_thresholds: list[float] = DEFAULT_IOU_THRESHOLDS
