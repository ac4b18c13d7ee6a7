import numpy as np
from scipy.spatial.transform import Rotation

from domain.errors import InvalidPose

ORTHONORMAL_TOLERANCE = 1e-9


class Pose3:
    """Rigid transform ``p -> rotation @ p + translation``.

    Naming follows ``target_from_source``: a ``world_from_body`` pose maps body-frame points into the world frame.
    """

    def __init__(self, rotation: np.ndarray, translation: np.ndarray):
        rotation = np.array(rotation, dtype=float).reshape(3, 3)
        translation = np.array(translation, dtype=float).reshape(3)

        if not (np.all(np.isfinite(rotation)) and np.all(np.isfinite(translation))):
            raise InvalidPose("Pose contains non-finite values")
        if np.abs(rotation.T @ rotation - np.eye(3)).max() > ORTHONORMAL_TOLERANCE:
            raise InvalidPose("Rotation is not orthonormal")
        if abs(np.linalg.det(rotation) - 1.0) > ORTHONORMAL_TOLERANCE:
            raise InvalidPose("Rotation determinant is not +1")

        rotation.setflags(write=False)
        translation.setflags(write=False)
        self.rotation: np.ndarray = rotation
        self.translation: np.ndarray = translation

    @staticmethod
    def identity():
        return Pose3(np.eye(3), np.zeros(3))

    @staticmethod
    def from_ypr(yaw: float, pitch: float, roll: float, translation=(0.0, 0.0, 0.0)):
        rotation = Rotation.from_euler("ZYX", [yaw, pitch, roll]).as_matrix()
        return Pose3(rotation, translation)

    @staticmethod
    def planar(x: float, y: float, yaw: float):
        cos_yaw, sin_yaw = np.cos(yaw), np.sin(yaw)
        rotation = np.array([[cos_yaw, -sin_yaw, 0.0], [sin_yaw, cos_yaw, 0.0], [0.0, 0.0, 1.0]])
        return Pose3(rotation, (x, y, 0.0))

    @staticmethod
    def orthonormalized(rotation: np.ndarray, translation: np.ndarray):
        u, _, vt = np.linalg.svd(np.asarray(rotation, dtype=float))
        rotation = u @ vt
        if np.linalg.det(rotation) < 0:
            u[:, -1] *= -1
            rotation = u @ vt
        return Pose3(rotation, translation)

    @property
    def x(self) -> float:
        return float(self.translation[0])

    @property
    def y(self) -> float:
        return float(self.translation[1])

    @property
    def yaw(self) -> float:
        return float(np.arctan2(self.rotation[1, 0], self.rotation[0, 0]))

    def compose(self, other: "Pose3") -> "Pose3":
        return Pose3.orthonormalized(
            self.rotation @ other.rotation, self.rotation @ other.translation + self.translation
        )

    def inverse(self) -> "Pose3":
        rotation_t = self.rotation.T
        return Pose3(rotation_t.copy(), -rotation_t @ self.translation)

    def transform(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return points @ self.rotation.T + self.translation

    def as_matrix(self) -> np.ndarray:
        matrix = np.eye(4)
        matrix[:3, :3] = self.rotation
        matrix[:3, 3] = self.translation
        return matrix

    def allclose(self, other: "Pose3", atol: float = 1e-9) -> bool:
        return bool(
            np.allclose(self.rotation, other.rotation, atol=atol, rtol=0.0)
            and np.allclose(self.translation, other.translation, atol=atol, rtol=0.0)
        )

    def __repr__(self):
        return f"Pose3(x={self.x:.4f}, y={self.y:.4f}, z={self.translation[2]:.4f}, yaw={self.yaw:.4f})"
