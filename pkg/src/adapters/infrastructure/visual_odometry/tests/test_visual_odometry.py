import math
from unittest import TestCase

import numpy as np

from adapters.infrastructure.geometry.camera_projection import project_point
from adapters.infrastructure.visual_odometry.fuse_state import fuse_state
from adapters.infrastructure.visual_odometry.imu_predict import imu_predict
from adapters.infrastructure.visual_odometry.landmark_map import LandmarkMap
from adapters.infrastructure.visual_odometry.pnp_estimate import RigObservations, perturbed, pnp_estimate
from adapters.infrastructure.visual_odometry.triangulate_landmark import triangulate_landmark
from domain.CameraIntrinsics import CameraIntrinsics
from domain.CameraRig import CameraRig
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.Landmark import Landmark
from domain.Pose3 import Pose3
from domain.RobotState import RobotState
from domain.errors import (
    DegenerateBaseline,
    DivergedSolve,
    InsufficientCorrespondences,
    NonPositiveDt,
    StaleMeasurement,
)


def synthetic_correspondences(rig: CameraRig, world_from_body: Pose3, per_camera: int, rng: np.random.Generator):
    correspondences = []
    for camera_index, camera in enumerate(rig):
        intrinsics = camera.intrinsics
        world_from_camera = camera.world_from_camera(world_from_body)
        for _ in range(per_camera):
            pixel = rng.uniform([20, 20], [intrinsics.width - 20, intrinsics.height - 20])
            depth = rng.uniform(3.0, 10.0)
            point_camera = depth * np.array(
                [(pixel[0] - intrinsics.cx) / intrinsics.fx, (pixel[1] - intrinsics.cy) / intrinsics.fy, 1.0]
            )
            landmark = Landmark(len(correspondences), world_from_camera.transform(point_camera), 2, camera_index)
            correspondences.append((landmark, pixel, camera_index))
    return correspondences


def perturbation(rng: np.random.Generator, angle: float, distance: float) -> np.ndarray:
    """Right-perturbation vector with the given rotation angle and translation length along random axes."""
    axis = rng.normal(size=3)
    direction = rng.normal(size=3)
    return np.concatenate([angle * axis / np.linalg.norm(axis), distance * direction / np.linalg.norm(direction)])


def assert_pose_close(test: TestCase, expected: Pose3, actual: Pose3, atol: float):
    np.testing.assert_allclose(actual.translation, expected.translation, atol=atol)
    np.testing.assert_allclose(actual.rotation, expected.rotation, atol=atol)


class TestTriangulateLandmark(TestCase):
    intrinsics = CameraIntrinsics(fx=500, fy=500, cx=320, cy=240, width=640, height=480)
    camera_a = Pose3.identity()
    camera_b = Pose3(np.eye(3), [0.5, 0.0, 0.0])

    def observe(self, camera: Pose3, point) -> np.ndarray:
        return project_point(self.intrinsics, camera.inverse(), point)

    def test_exact_views_recover_point(self):
        point = np.array([0.3, -0.2, 5.0])
        recovered = triangulate_landmark(
            (self.observe(self.camera_a, point), self.camera_a),
            (self.observe(self.camera_b, point), self.camera_b),
            self.intrinsics,
        )
        np.testing.assert_allclose(recovered, point, atol=1e-6)

    def test_identical_poses_are_degenerate(self):
        pixel = self.observe(self.camera_a, [0.0, 0.0, 5.0])
        with self.assertRaises(DegenerateBaseline):
            triangulate_landmark((pixel, self.camera_a), (pixel, self.camera_a), self.intrinsics)

    def test_noisy_pixels_stay_within_bound(self):
        rng = np.random.default_rng(17)
        point = np.array([0.0, 0.0, 5.0])
        errors = []
        for _ in range(200):
            pixel_a = self.observe(self.camera_a, point) + rng.normal(0.0, 0.5, 2)
            pixel_b = self.observe(self.camera_b, point) + rng.normal(0.0, 0.5, 2)
            recovered = triangulate_landmark((pixel_a, self.camera_a), (pixel_b, self.camera_b), self.intrinsics)
            errors.append(np.linalg.norm(recovered - point))
        self.assertLess(math.sqrt(np.mean(np.square(errors))), 0.15)


class TestPnpEstimate(TestCase):
    rig = CameraRig.default()
    truth = Pose3.planar(1.0, -0.5, 0.3)

    def test_truth_is_a_fixed_point(self):
        correspondences = synthetic_correspondences(self.rig, self.truth, 5, np.random.default_rng(1))
        pose, inliers = pnp_estimate(correspondences, self.rig, self.truth)
        assert_pose_close(self, self.truth, pose, 1e-9)
        self.assertEqual(20, inliers)

    def test_recovers_from_perturbed_initial(self):
        correspondences = synthetic_correspondences(self.rig, self.truth, 5, np.random.default_rng(2))
        initial = Pose3.planar(1.0 + 0.3 * math.cos(1.0), -0.5 + 0.3 * math.sin(1.0), 0.3 + math.radians(5))
        pose, _ = pnp_estimate(correspondences, self.rig, initial)
        assert_pose_close(self, self.truth, pose, 1e-6)

    def test_recovers_from_perturbations_within_basin(self):
        rng = np.random.default_rng(3)
        correspondences = synthetic_correspondences(self.rig, self.truth, 8, rng)
        for _ in range(100):
            delta = perturbation(rng, math.radians(10) * rng.uniform(0, 1), 0.5 * rng.uniform(0, 1))
            pose, _ = pnp_estimate(correspondences, self.rig, perturbed(self.truth, delta))
            assert_pose_close(self, self.truth, pose, 1e-6)

    def test_seeded_trials_recover_truth_exactly(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            correspondences = synthetic_correspondences(self.rig, self.truth, 5, rng)
            initial = perturbed(self.truth, perturbation(rng, math.radians(5), 0.3))
            pose, inliers = pnp_estimate(correspondences, self.rig, initial)
            assert_pose_close(self, self.truth, pose, 1e-6)
            self.assertEqual(20, inliers)

    def test_seeded_trials_with_one_in_five_gross_outliers(self):
        rng = np.random.default_rng(8)
        recovered = 0
        for _ in range(100):
            correspondences = synthetic_correspondences(self.rig, self.truth, 5, rng)
            for index in rng.choice(len(correspondences), 4, replace=False):
                landmark, pixel, camera = correspondences[index]
                direction = rng.uniform(0, 2 * math.pi)
                offset = 50.0 * np.array([math.cos(direction), math.sin(direction)])
                correspondences[index] = (landmark, pixel + offset, camera)
            initial = perturbed(self.truth, perturbation(rng, math.radians(5), 0.3))
            try:
                pose, inliers = pnp_estimate(correspondences, self.rig, initial)
            except (InsufficientCorrespondences, DivergedSolve):
                continue
            if inliers == 16 and np.linalg.norm(pose.translation - self.truth.translation) <= 1e-3:
                recovered += 1
        self.assertGreaterEqual(recovered, 95)

    def test_rejects_corrupted_correspondences(self):
        correspondences = synthetic_correspondences(self.rig, self.truth, 5, np.random.default_rng(4))
        for index in (0, 6, 12, 18):
            landmark, pixel, camera = correspondences[index]
            correspondences[index] = (landmark, pixel + np.array([50.0, 0.0]), camera)
        initial = Pose3.planar(1.1, -0.4, 0.3 + math.radians(2))
        pose, inliers = pnp_estimate(correspondences, self.rig, initial)
        self.assertEqual(16, inliers)
        np.testing.assert_allclose(pose.translation, self.truth.translation, atol=1e-3)

    def test_too_few_correspondences(self):
        correspondences = synthetic_correspondences(self.rig, self.truth, 1, np.random.default_rng(5))[:3]
        with self.assertRaises(InsufficientCorrespondences):
            pnp_estimate(correspondences, self.rig, self.truth)

    def test_analytic_jacobian_matches_finite_differences(self):
        rng = np.random.default_rng(6)
        step = 1e-6
        for _ in range(100):
            pose = Pose3.from_ypr(*rng.uniform(-math.pi, math.pi, 3), translation=rng.uniform(-3, 3, 3))
            correspondences = synthetic_correspondences(self.rig, pose, 2, rng)
            observations = RigObservations.from_correspondences(correspondences, self.rig)
            analytic = observations.jacobian(pose)
            numeric = np.zeros_like(analytic)
            for axis in range(6):
                delta = np.zeros(6)
                delta[axis] = step
                forward, _ = observations.residuals(perturbed(pose, delta))
                backward, _ = observations.residuals(perturbed(pose, -delta))
                numeric[:, :, axis] = (forward - backward) / (2 * step)
            self.assertLess(np.linalg.norm(analytic - numeric) / np.linalg.norm(analytic), 1e-5)


class TestImuPredict(TestCase):
    def test_stationary(self):
        state = RobotState.at_rest(1.0, 2.0, 0.5, timestamp=3.0)
        predicted = imu_predict(state, ImuSample((0, 0, 9.81), (0, 0, 0), 3.1), 0.1)
        self.assertTrue(predicted.pose.allclose(state.pose, atol=1e-12))
        self.assertAlmostEqual(3.1, predicted.timestamp)

    def test_single_euler_step(self):
        predicted = imu_predict(RobotState.at_rest(), ImuSample((1.0, 0, 0), (0, 0, 0), 0.1), 0.1)
        self.assertAlmostEqual(0.1, predicted.v)

    def test_constant_turn_follows_quarter_circle(self):
        state = RobotState(Pose3.identity(), 1.0, 0.0, 0.0)
        for step in range(100):
            state = imu_predict(state, ImuSample((0, 0, 0), (0, 0, math.pi / 2), 0.01 * (step + 1)), 0.01)
        radius = 2 / math.pi
        self.assertLess(math.hypot(state.x - radius, state.y - radius), 0.02 * radius)
        self.assertAlmostEqual(math.pi / 2, state.yaw, places=9)

    def test_rejects_bad_dt(self):
        for dt in (0.0, -0.01, 0.2):
            with self.assertRaises(NonPositiveDt):
                imu_predict(RobotState.at_rest(), ImuSample((0, 0, 0), (0, 0, 0), 0.0), dt)


class TestFuseState(TestCase):
    predicted = RobotState.at_rest(timestamp=2.0)

    def test_prediction_only(self):
        self.assertIs(self.predicted, fuse_state(self.predicted, None, 0, None))

    def test_agreeing_measurement_changes_nothing(self):
        state = RobotState(Pose3.planar(1.5, -2.0, 0.7), 0.4, 0.1, 5.0)
        fused = fuse_state(state, state.pose, 40, None)
        self.assertTrue(fused.pose.allclose(state.pose, atol=1e-12))
        fused_again = fuse_state(fused, fused.pose, 40, None)
        self.assertTrue(fused_again.pose.allclose(fused.pose, atol=1e-12))

    def test_vision_gain(self):
        fused = fuse_state(self.predicted, Pose3.planar(1.0, 0.0, 0.0), 30, None)
        self.assertAlmostEqual(0.8, fused.x)
        half_gain = fuse_state(self.predicted, Pose3.planar(1.0, 0.0, 0.0), 15, None)
        self.assertAlmostEqual(0.4, half_gain.x)

    def test_gps_gain_is_capped(self):
        fused = fuse_state(self.predicted, None, 0, GpsFix((2.0, 0.0), 0.1, 2.0))
        self.assertAlmostEqual(1.0, fused.x)
        fused = fuse_state(self.predicted, None, 0, GpsFix((2.0, 0.0), 1.5, 2.0))
        self.assertAlmostEqual(0.5, fused.x)

    def test_stale_fix(self):
        with self.assertRaises(StaleMeasurement):
            fuse_state(self.predicted, None, 0, GpsFix((2.0, 0.0), 0.5, 2.2))


class TestLandmarkMap(TestCase):
    def test_evicts_oldest(self):
        landmark_map = LandmarkMap(capacity=3)
        for track_id in range(5):
            landmark_map.insert(Landmark(track_id, np.zeros(3)))
        self.assertEqual(3, len(landmark_map))
        self.assertNotIn((0, 0), landmark_map)
        self.assertIn((0, 4), landmark_map)

    def test_same_track_id_on_other_camera_is_distinct(self):
        landmark_map = LandmarkMap()
        landmark_map.insert(Landmark(7, np.zeros(3), camera_index=0))
        landmark_map.insert(Landmark(7, np.ones(3), camera_index=2))
        landmark_map.mark_observed((2, 7))
        self.assertEqual(2, len(landmark_map))
        self.assertEqual(3, landmark_map.get((2, 7)).observation_count)
