import numpy as np

from domain.SemanticMap import SemanticMap
from domain.errors import DimensionMismatch


def check_dimensions(pred: SemanticMap, gt: SemanticMap):
    if pred.shape != gt.shape:
        raise DimensionMismatch(f"Prediction {pred.shape} and ground truth {gt.shape} differ")


def confusion_matrix(pred: SemanticMap, gt: SemanticMap, num_classes: int) -> np.ndarray:
    """Rows are ground-truth classes, columns predicted classes, both 0-based (class id − 1)."""
    check_dimensions(pred, gt)
    indices = (gt.classes.ravel() - 1) * num_classes + (pred.classes.ravel() - 1)
    return np.bincount(indices, minlength=num_classes**2).reshape(num_classes, num_classes)


def accuracy_from_confusion(confusion: np.ndarray) -> float:
    total = confusion.sum()
    return float(np.trace(confusion) / total) if total else 0.0


def iou_from_confusion(confusion: np.ndarray) -> tuple[float, list[float | None]]:
    intersection = np.diag(confusion).astype(float)
    union = confusion.sum(axis=0) + confusion.sum(axis=1) - intersection
    present = union > 0
    per_class = [float(intersection[c] / union[c]) if present[c] else None for c in range(len(union))]
    mean = float(np.mean(intersection[present] / union[present])) if present.any() else 0.0
    return mean, per_class


def overall_accuracy(pred: SemanticMap, gt: SemanticMap) -> float:
    check_dimensions(pred, gt)
    if gt.classes.size == 0:
        return 0.0
    return float(np.mean(pred.classes == gt.classes))


def mean_iou(pred: SemanticMap, gt: SemanticMap, num_classes: int) -> tuple[float, list[float | None]]:
    """Classes absent from both maps are excluded from the mean and reported as None."""
    return iou_from_confusion(confusion_matrix(pred, gt, num_classes))
