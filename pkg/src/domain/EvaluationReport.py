from pydantic import BaseModel

from domain.MetricsReport import MetricsReport


class FrameMetrics(BaseModel):
    frame: str
    overall_accuracy: float
    mean_iou: float
    average_precision: float | None = None


class EvaluationReport(BaseModel):
    aggregate: MetricsReport
    frames: list[FrameMetrics] = []
    missing: list[str] = []
    invalid: list[str] = []

    def to_text(self) -> str:
        return self.model_dump_json(indent=2) + "\n"
