import numpy as np

from domain.errors import PerceptsError


class InstanceMap:
    """Per-pixel instance ids; 0 means no instance and ids need not be contiguous."""

    def __init__(self, ids: np.ndarray):
        ids = np.asarray(ids)
        if ids.ndim != 2:
            raise PerceptsError(f"Instance map must be two dimensional, got shape {ids.shape}")
        if ids.size and ids.min() < 0:
            raise PerceptsError("Instance ids must be non-negative")
        ids = np.ascontiguousarray(ids, dtype=np.int64)
        ids.setflags(write=False)
        self.ids: np.ndarray = ids

    @property
    def width(self) -> int:
        return int(self.ids.shape[1])

    @property
    def height(self) -> int:
        return int(self.ids.shape[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.ids.shape
