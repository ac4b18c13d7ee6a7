import numpy as np

from domain.BoundingBox2D import BoundingBox2D
from domain.SegmentationConfig import DEFAULT_IOU_THRESHOLDS


def match_frame(
    pred_boxes: list[tuple[BoundingBox2D, float]], gt_boxes: list[BoundingBox2D], threshold: float, class_id: int
) -> list[tuple[float, bool]]:
    """Greedy matching within one frame: (confidence, is_true_positive) for each prediction of the class."""
    predictions = sorted(
        [(box, confidence) for box, confidence in pred_boxes if box.c == class_id], key=lambda item: -item[1]
    )
    ground_truth = [box for box in gt_boxes if box.c == class_id]
    matched = [False] * len(ground_truth)

    records = []
    for box, confidence in predictions:
        best_index, best_iou = -1, threshold
        for index, gt_box in enumerate(ground_truth):
            if matched[index]:
                continue
            iou = box.iou(gt_box)
            if iou >= best_iou and (best_index < 0 or iou > best_iou):
                best_index, best_iou = index, iou
        if best_index >= 0:
            matched[best_index] = True
        records.append((confidence, best_index >= 0))
    return records


def area_under_precision_recall(records: list[tuple[float, bool]], gt_count: int) -> float:
    """All-point interpolated area under the precision-recall curve."""
    if not records:
        return 0.0
    order = sorted(range(len(records)), key=lambda index: -records[index][0])
    true_positives = np.cumsum([records[index][1] for index in order])
    precisions = true_positives / np.arange(1, len(order) + 1)
    recalls = true_positives / gt_count

    precisions = np.concatenate([[0.0], precisions, [0.0]])
    recalls = np.concatenate([[0.0], recalls, [1.0]])
    precisions = np.maximum.accumulate(precisions[::-1])[::-1]
    changes = np.nonzero(recalls[1:] != recalls[:-1])[0] + 1
    return float(np.sum((recalls[changes] - recalls[changes - 1]) * precisions[changes]))


def average_precision_over_frames(
    frames: list[tuple[list[tuple[BoundingBox2D, float]], list[BoundingBox2D]]],
    iou_thresholds: list[float] = DEFAULT_IOU_THRESHOLDS,
) -> float | None:
    """Box AP pooled over frames: matching stays within a frame, ranking spans all frames.

    Returns None when no frame holds a ground-truth box.
    """
    gt_classes = sorted({box.c for _, gt_boxes in frames for box in gt_boxes})
    if not gt_classes:
        return None

    per_threshold = []
    for threshold in iou_thresholds:
        per_class = []
        for class_id in gt_classes:
            records = []
            for pred_boxes, gt_boxes in frames:
                records.extend(match_frame(pred_boxes, gt_boxes, threshold, class_id))
            gt_count = sum(1 for _, gt_boxes in frames for box in gt_boxes if box.c == class_id)
            per_class.append(area_under_precision_recall(records, gt_count))
        per_threshold.append(np.mean(per_class))
    return float(np.mean(per_threshold))


def average_precision(
    pred_boxes: list[tuple[BoundingBox2D, float]],
    gt_boxes: list[BoundingBox2D],
    iou_thresholds: list[float] = DEFAULT_IOU_THRESHOLDS,
) -> float | None:
    return average_precision_over_frames([(pred_boxes, gt_boxes)], iou_thresholds)
