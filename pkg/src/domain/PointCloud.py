import numpy as np

from domain.errors import MappingError


class PointCloud:
    def __init__(self, points: np.ndarray, timestamp: float = 0.0):
        points = np.array(points, dtype=float).reshape(-1, 3)
        if not np.all(np.isfinite(points)):
            raise MappingError("Point cloud holds non-finite coordinates")
        points.setflags(write=False)
        self.points: np.ndarray = points
        self.timestamp = timestamp

    def __len__(self):
        return len(self.points)
