import numpy as np

from configuration import NUM_CLASSES
from domain.errors import LabelOutOfRange, PerceptsError


class SemanticMap:
    def __init__(self, classes: np.ndarray, num_classes: int = NUM_CLASSES):
        classes = np.asarray(classes)
        if classes.ndim != 2:
            raise PerceptsError(f"Semantic map must be two dimensional, got shape {classes.shape}")
        if classes.size and (classes.min() < 1 or classes.max() > num_classes):
            raise LabelOutOfRange(f"Semantic classes must lie in [1, {num_classes}]")
        classes = np.ascontiguousarray(classes, dtype=np.int32)
        classes.setflags(write=False)
        self.classes: np.ndarray = classes
        self.num_classes = num_classes

    @property
    def width(self) -> int:
        return int(self.classes.shape[1])

    @property
    def height(self) -> int:
        return int(self.classes.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.classes.shape
