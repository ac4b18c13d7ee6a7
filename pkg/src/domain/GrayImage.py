import numpy as np

from domain.errors import FeatureError, ImageTooSmall

MIN_PROCESSING_SIZE = 16


class GrayImage:
    def __init__(self, data: np.ndarray):
        data = np.asarray(data)
        if data.ndim != 2:
            raise FeatureError(f"Gray image must be two dimensional, got shape {data.shape}")
        if data.dtype != np.uint8:
            if data.size and (data.min() < 0 or data.max() > 255):
                raise FeatureError("Gray image intensities must lie in [0, 255]")
            data = data.astype(np.uint8)
        data = np.ascontiguousarray(data)
        data.setflags(write=False)
        self.data: np.ndarray = data

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    def check_processing_size(self):
        if self.width < MIN_PROCESSING_SIZE or self.height < MIN_PROCESSING_SIZE:
            minimum = f"{MIN_PROCESSING_SIZE}x{MIN_PROCESSING_SIZE}"
            raise ImageTooSmall(f"Image {self.width}x{self.height} is below {minimum}")

    def __eq__(self, other):
        return isinstance(other, GrayImage) and np.array_equal(self.data, other.data)
