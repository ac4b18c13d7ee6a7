import numpy as np

from domain.errors import GeometryError


class GroundPlane:
    """Plane ``{p : normal . p = offset}``; the default is the world z = 0 ground."""

    def __init__(self, normal=(0.0, 0.0, 1.0), offset: float = 0.0):
        normal = np.array(normal, dtype=float).reshape(3)
        if abs(np.linalg.norm(normal) - 1.0) > 1e-9:
            raise GeometryError("Ground plane normal must be a unit vector")
        normal.setflags(write=False)
        self.normal: np.ndarray = normal
        self.offset: float = float(offset)

    def signed_height(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal - self.offset
