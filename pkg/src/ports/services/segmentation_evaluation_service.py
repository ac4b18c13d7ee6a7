from abc import ABC, abstractmethod

from domain.BoundingBox2D import BoundingBox2D
from domain.EvaluationReport import FrameMetrics
from domain.InstanceMap import InstanceMap
from domain.MetricsReport import MetricsReport
from domain.SemanticMap import SemanticMap


class SegmentationEvaluationService(ABC):
    @abstractmethod
    def reset(self, num_classes: int) -> None:
        pass

    @abstractmethod
    def add_pair(
        self,
        frame: str,
        prediction: tuple[SemanticMap, InstanceMap],
        ground_truth: tuple[SemanticMap, InstanceMap],
        confidences: dict[int, float] | None = None,
    ) -> FrameMetrics:
        pass

    @abstractmethod
    def predicted_boxes(self, frame: str) -> list[tuple[BoundingBox2D, float]]:
        pass

    @abstractmethod
    def aggregate(self) -> MetricsReport:
        pass
