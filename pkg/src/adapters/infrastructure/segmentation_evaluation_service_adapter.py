import numpy as np

from adapters.infrastructure.percepts.average_precision import average_precision, average_precision_over_frames
from adapters.infrastructure.percepts.extract_boxes import extract_boxes
from adapters.infrastructure.percepts.segmentation_metrics import (
    accuracy_from_confusion,
    confusion_matrix,
    iou_from_confusion,
)
from domain.BoundingBox2D import BoundingBox2D
from domain.EvaluationReport import FrameMetrics
from domain.InstanceMap import InstanceMap
from domain.MetricsReport import MetricsReport
from domain.SegmentationConfig import SegmentationConfig
from domain.SemanticMap import SemanticMap
from domain.errors import DimensionMismatch
from ports.services.segmentation_evaluation_service import SegmentationEvaluationService


class SegmentationEvaluationServiceAdapter(SegmentationEvaluationService):
    """Pools pixel confusion and box matches over frames; every frame is also scored on its own."""

    def __init__(self, config: SegmentationConfig = SegmentationConfig()):
        self.config = config
        self.num_classes = config.num_classes
        self.confusion = np.zeros((self.num_classes, self.num_classes), dtype=np.int64)
        self.box_frames: list[tuple[list[tuple[BoundingBox2D, float]], list[BoundingBox2D]]] = []
        self.predictions: dict[str, list[tuple[BoundingBox2D, float]]] = {}

    def reset(self, num_classes: int) -> None:
        self.num_classes = num_classes
        self.confusion = np.zeros((num_classes, num_classes), dtype=np.int64)
        self.box_frames = []
        self.predictions = {}

    def add_pair(
        self,
        frame: str,
        prediction: tuple[SemanticMap, InstanceMap],
        ground_truth: tuple[SemanticMap, InstanceMap],
        confidences: dict[int, float] | None = None,
    ) -> FrameMetrics:
        """confidences maps predicted instance ids to scores; instances without one score 1."""
        pred_semantic, pred_instance = prediction
        gt_semantic, gt_instance = ground_truth
        if pred_instance.shape != gt_instance.shape:
            raise DimensionMismatch(f"Instance maps of {frame} differ: {pred_instance.shape} vs {gt_instance.shape}")

        confusion = confusion_matrix(pred_semantic, gt_semantic, self.num_classes)
        min_area = self.config.min_area
        pred_boxes = [
            (box, (confidences or {}).get(box.instance_id, 1.0))
            for box in extract_boxes(pred_instance, pred_semantic, min_area)
        ]
        gt_boxes = extract_boxes(gt_instance, gt_semantic, min_area)

        self.confusion += confusion
        self.box_frames.append((pred_boxes, gt_boxes))
        self.predictions[frame] = pred_boxes
        mean, _ = iou_from_confusion(confusion)
        return FrameMetrics(
            frame=frame,
            overall_accuracy=accuracy_from_confusion(confusion),
            mean_iou=mean,
            average_precision=average_precision(pred_boxes, gt_boxes, self.config.iou_thresholds),
        )

    def predicted_boxes(self, frame: str) -> list[tuple[BoundingBox2D, float]]:
        return self.predictions.get(frame, [])

    def aggregate(self) -> MetricsReport:
        mean, per_class = iou_from_confusion(self.confusion)
        return MetricsReport(
            overall_accuracy=accuracy_from_confusion(self.confusion),
            mean_iou=mean,
            average_precision=average_precision_over_frames(self.box_frames, self.config.iou_thresholds),
            per_class_iou=per_class,
            frame_count=len(self.box_frames),
        )
