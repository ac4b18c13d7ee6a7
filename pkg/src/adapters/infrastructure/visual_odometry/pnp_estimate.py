import numpy as np
from scipy.spatial.transform import Rotation

from domain.CameraRig import CameraRig
from domain.Landmark import Landmark
from domain.Pose3 import Pose3
from domain.errors import DivergedSolve, InsufficientCorrespondences

MIN_CORRESPONDENCES = 4
MAX_ITERATIONS = 50
UPDATE_TOLERANCE = 1e-8
RELATIVE_COST_TOLERANCE = 1e-12
CONVERGED_COST = 1e-20
MAX_CONSECUTIVE_REJECTIONS = 5
HUBER_PX = 2.0
OUTLIER_PX = 3.0
MIN_DEPTH_M = 1e-6


def skew(vectors: np.ndarray) -> np.ndarray:
    matrices = np.zeros(vectors.shape[:-1] + (3, 3))
    matrices[..., 0, 1], matrices[..., 0, 2] = -vectors[..., 2], vectors[..., 1]
    matrices[..., 1, 0], matrices[..., 1, 2] = vectors[..., 2], -vectors[..., 0]
    matrices[..., 2, 0], matrices[..., 2, 1] = -vectors[..., 1], vectors[..., 0]
    return matrices


def perturbed(pose: Pose3, delta: np.ndarray) -> Pose3:
    """Right perturbation: rotation R·Exp(omega), translation t + R·rho for delta = (omega, rho)."""
    rotation = pose.rotation @ Rotation.from_rotvec(delta[:3]).as_matrix()
    return Pose3.orthonormalized(rotation, pose.translation + pose.rotation @ delta[3:])


class RigObservations:
    """Landmark positions, pixels and per-camera extrinsics stacked for vectorized residuals."""

    def __init__(self, points_world: np.ndarray, pixels: np.ndarray, camera_indices: np.ndarray, rig: CameraRig):
        self.points_world = points_world
        self.pixels = pixels
        self.camera_indices = camera_indices
        self.rotations = np.stack([rig[i].camera_from_body.rotation for i in camera_indices])
        self.translations = np.stack([rig[i].camera_from_body.translation for i in camera_indices])
        self.focal = np.array([[rig[i].intrinsics.fx, rig[i].intrinsics.fy] for i in camera_indices])
        self.principal = np.array([[rig[i].intrinsics.cx, rig[i].intrinsics.cy] for i in camera_indices])

    @staticmethod
    def from_correspondences(landmarks_and_pixels, rig: CameraRig) -> "RigObservations":
        points = np.array([landmark.position for landmark, _, _ in landmarks_and_pixels], dtype=float).reshape(-1, 3)
        pixels = np.array([pixel for _, pixel, _ in landmarks_and_pixels], dtype=float).reshape(-1, 2)
        cameras = np.array([camera for _, _, camera in landmarks_and_pixels], dtype=int)
        return RigObservations(points, pixels, cameras, rig)

    def subset(self, mask: np.ndarray) -> "RigObservations":
        subset = object.__new__(RigObservations)
        for name, value in vars(self).items():
            setattr(subset, name, value[mask])
        return subset

    def __len__(self):
        return len(self.points_world)

    def body_points(self, world_from_body: Pose3) -> np.ndarray:
        return (self.points_world - world_from_body.translation) @ world_from_body.rotation

    def camera_points(self, world_from_body: Pose3) -> np.ndarray:
        points_body = self.body_points(world_from_body)
        return np.einsum("nij,nj->ni", self.rotations, points_body) + self.translations

    def residuals(self, world_from_body: Pose3) -> tuple[np.ndarray, np.ndarray]:
        """Returns (N×2 projected minus observed pixels, in-front mask)."""
        points_camera = self.camera_points(world_from_body)
        depth = points_camera[:, 2]
        in_front = depth > MIN_DEPTH_M
        safe_depth = np.where(in_front, depth, 1.0)[:, None]
        projected = self.focal * points_camera[:, :2] / safe_depth + self.principal
        return projected - self.pixels, in_front

    def jacobian(self, world_from_body: Pose3) -> np.ndarray:
        """N×2×6 derivative of the residuals with respect to the right perturbation (omega, rho)."""
        points_body = self.body_points(world_from_body)
        points_camera = np.einsum("nij,nj->ni", self.rotations, points_body) + self.translations
        x, y, z = points_camera.T
        projection = np.zeros((len(self), 2, 3))
        projection[:, 0, 0] = self.focal[:, 0] / z
        projection[:, 0, 2] = -self.focal[:, 0] * x / z**2
        projection[:, 1, 1] = self.focal[:, 1] / z
        projection[:, 1, 2] = -self.focal[:, 1] * y / z**2
        body_derivative = np.concatenate([skew(points_body), -np.broadcast_to(np.eye(3), (len(self), 3, 3))], axis=2)
        return projection @ self.rotations @ body_derivative


def robust_cost(errors: np.ndarray, huber: float | None) -> float:
    if huber is None:
        return float(0.5 * np.sum(errors**2))
    return float(np.sum(np.where(errors <= huber, 0.5 * errors**2, huber * (errors - 0.5 * huber))))


def evaluate(observations: RigObservations, pose: Pose3, huber: float | None) -> tuple[float, np.ndarray]:
    residuals, in_front = observations.residuals(pose)
    if not in_front.all():
        return np.inf, residuals
    return robust_cost(np.linalg.norm(residuals, axis=1), huber), residuals


def gauss_newton(
    observations: RigObservations, initial: Pose3, huber: float | None, max_iterations: int = MAX_ITERATIONS
) -> Pose3:
    """Levenberg-damped Gauss-Newton; the Huber kernel enters through per-correspondence IRLS weights."""
    pose = initial
    cost, residuals = evaluate(observations, pose, huber)
    if not np.isfinite(cost):
        raise DivergedSolve("Initial pose puts landmarks behind their cameras")

    damping = 1e-3
    rejections = 0
    for _ in range(max_iterations):
        if cost < CONVERGED_COST:
            break
        errors = np.linalg.norm(residuals, axis=1)
        weights = np.ones(len(errors))
        if huber is not None:
            weights = np.where(errors <= huber, 1.0, huber / np.maximum(errors, 1e-300))
        jacobian = observations.jacobian(pose)
        hessian = np.einsum("n,nki,nkj->ij", weights, jacobian, jacobian)
        gradient = np.einsum("n,nki,nk->i", weights, jacobian, residuals)

        delta = np.linalg.solve(hessian + damping * np.diag(np.diag(hessian)) + 1e-12 * np.eye(6), -gradient)
        if np.linalg.norm(delta) < UPDATE_TOLERANCE:
            break

        candidate = perturbed(pose, delta)
        candidate_cost, candidate_residuals = evaluate(observations, candidate, huber)
        if candidate_cost <= cost * (1.0 + RELATIVE_COST_TOLERANCE):
            relative_change = (cost - candidate_cost) / max(cost, 1e-300)
            pose, cost, residuals = candidate, candidate_cost, candidate_residuals
            damping = max(damping / 10.0, 1e-9)
            rejections = 0
            if relative_change < RELATIVE_COST_TOLERANCE:
                break
        else:
            rejections += 1
            damping *= 10.0
            if rejections >= MAX_CONSECUTIVE_REJECTIONS:
                raise DivergedSolve(f"Reprojection error increased for {rejections} consecutive damped steps")

    return pose


def pnp_estimate(
    landmarks_and_pixels: list[tuple[Landmark, np.ndarray, int]],
    rig: CameraRig,
    initial: Pose3,
    huber_px: float = HUBER_PX,
    outlier_px: float = OUTLIER_PX,
    max_iterations: int = MAX_ITERATIONS,
) -> tuple[Pose3, int]:
    """Joint body pose over every rig camera: a Huber-weighted pass, a hard outlier gate, then a plain re-solve."""
    if len(landmarks_and_pixels) < MIN_CORRESPONDENCES:
        raise InsufficientCorrespondences(
            f"Got {len(landmarks_and_pixels)} correspondences, need {MIN_CORRESPONDENCES}"
        )

    observations = RigObservations.from_correspondences(landmarks_and_pixels, rig)
    _, in_front = observations.residuals(initial)
    observations = observations.subset(in_front)
    if len(observations) < MIN_CORRESPONDENCES:
        raise InsufficientCorrespondences(f"Only {len(observations)} landmarks lie in front of their cameras")

    pose = gauss_newton(observations, initial, huber_px, max_iterations)
    residuals, in_front = observations.residuals(pose)
    inliers = in_front & (np.linalg.norm(residuals, axis=1) <= outlier_px)
    inlier_count = int(inliers.sum())
    if inlier_count < MIN_CORRESPONDENCES:
        raise InsufficientCorrespondences(f"Only {inlier_count} inliers within {outlier_px} px")

    pose = gauss_newton(observations.subset(inliers), pose, None, max_iterations)
    return pose, inlier_count


def inlier_rms(
    landmarks_and_pixels: list[tuple[Landmark, np.ndarray, int]],
    rig: CameraRig,
    pose: Pose3,
    outlier_px: float = OUTLIER_PX,
) -> float:
    """Reprojection RMS in pixels over the correspondences within outlier_px of their projection at pose."""
    observations = RigObservations.from_correspondences(landmarks_and_pixels, rig)
    residuals, in_front = observations.residuals(pose)
    errors = np.linalg.norm(residuals, axis=1)
    inliers = in_front & (errors <= outlier_px)
    if not inliers.any():
        return np.inf
    return float(np.sqrt(np.mean(errors[inliers] ** 2)))
