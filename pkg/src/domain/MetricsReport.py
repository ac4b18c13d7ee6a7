from pydantic import BaseModel, Field


class MetricsReport(BaseModel):
    overall_accuracy: float = Field(ge=0, le=1)
    mean_iou: float = Field(ge=0, le=1)
    average_precision: float | None = Field(None, ge=0, le=1)
    per_class_iou: list[float | None]
    frame_count: int = 0

    def summary(self) -> str:
        average_precision = "undefined" if self.average_precision is None else f"{100 * self.average_precision:.2f}%"
        return (
            f"OA {100 * self.overall_accuracy:.2f}%, mIoU {100 * self.mean_iou:.2f}%, box AP {average_precision} "
            f"over {self.frame_count} frames"
        )
