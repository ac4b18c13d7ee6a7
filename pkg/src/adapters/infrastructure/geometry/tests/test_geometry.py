import math
from unittest import TestCase

import numpy as np

from adapters.infrastructure.geometry.camera_projection import project_point, unproject_ray, unproject_rays
from adapters.infrastructure.geometry.pose_operations import compose_pose, invert_pose
from adapters.infrastructure.geometry.ray_ground_intersection import ray_ground_intersection
from domain.CameraIntrinsics import CameraIntrinsics
from domain.CameraRig import CameraRig
from domain.GroundPlane import GroundPlane
from domain.Pose3 import Pose3
from domain.RigCalibration import RigCalibration
from domain.errors import BehindCamera, InvalidPose, NoIntersection


def random_pose(rng: np.random.Generator) -> Pose3:
    yaw, pitch, roll = rng.uniform(-math.pi, math.pi), rng.uniform(-1.2, 1.2), rng.uniform(-math.pi, math.pi)
    return Pose3.from_ypr(yaw, pitch, roll, rng.uniform(-5, 5, size=3))


class TestPoses(TestCase):
    def test_identity_composition(self):
        pose = random_pose(np.random.default_rng(1))
        self.assertTrue(compose_pose(Pose3.identity(), pose).allclose(pose))

    def test_inverse_composition(self):
        pose = random_pose(np.random.default_rng(2))
        self.assertTrue(compose_pose(pose, invert_pose(pose)).allclose(Pose3.identity()))

    def test_two_quarter_turns(self):
        quarter = Pose3.from_ypr(math.pi / 2, 0.0, 0.0)
        half = compose_pose(quarter, quarter)
        expected = np.array([[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]])
        np.testing.assert_allclose(half.rotation, expected, atol=1e-12)

    def test_associativity(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            a, b, c = random_pose(rng), random_pose(rng), random_pose(rng)
            self.assertTrue(compose_pose(compose_pose(a, b), c).allclose(compose_pose(a, compose_pose(b, c))))

    def test_rejects_non_orthonormal(self):
        with self.assertRaises(InvalidPose):
            Pose3(np.diag([1.0, 1.0, 2.0]), np.zeros(3))
        with self.assertRaises(InvalidPose):
            Pose3(np.diag([1.0, 1.0, -1.0]), np.zeros(3))


class TestProjection(TestCase):
    intrinsics = CameraIntrinsics(fx=100, fy=100, cx=160, cy=160, width=320, height=320)

    def test_optical_axis_projects_to_principal_point(self):
        for depth in [0.5, 3.0, 40.0]:
            pixel = project_point(self.intrinsics, Pose3.identity(), [0.0, 0.0, depth])
            np.testing.assert_allclose(pixel, [160.0, 160.0])

    def test_hand_evaluated_projection(self):
        pixel = project_point(self.intrinsics, Pose3.identity(), [1.0, 0.0, 2.0])
        np.testing.assert_allclose(pixel, [210.0, 160.0])

    def test_zero_depth_is_behind_camera(self):
        with self.assertRaises(BehindCamera):
            project_point(self.intrinsics, Pose3.identity(), [1.0, 1.0, 0.0])

    def test_unproject_principal_point(self):
        np.testing.assert_allclose(unproject_ray(self.intrinsics, [160.0, 160.0]), [0.0, 0.0, 1.0])

    def test_unproject_hand_evaluated(self):
        expected = np.array([1.0, 0.0, 1.0]) / math.sqrt(2.0)
        np.testing.assert_allclose(unproject_ray(self.intrinsics, [260.0, 160.0]), expected, atol=1e-15)

    def test_unproject_round_trip(self):
        rng = np.random.default_rng(4)
        pixels = rng.uniform(-50, 370, size=(100, 2))
        for pixel, ray in zip(pixels, unproject_rays(self.intrinsics, pixels)):
            self.assertAlmostEqual(1.0, float(np.linalg.norm(ray)), places=12)
            reprojected = project_point(self.intrinsics, Pose3.identity(), ray * 5.0)
            np.testing.assert_allclose(reprojected, pixel, atol=1e-6)

    def test_project_unproject_recovers_points(self):
        rng = np.random.default_rng(5)
        cam_from_world = random_pose(rng)
        world_from_cam = cam_from_world.inverse()
        points_camera = np.column_stack(
            [rng.uniform(-4, 4, 1000), rng.uniform(-3, 3, 1000), rng.uniform(0.2, 30, 1000)]
        )
        for point_camera in points_camera:
            point_world = world_from_cam.transform(point_camera)
            pixel = project_point(self.intrinsics, cam_from_world, point_world)
            ray = unproject_ray(self.intrinsics, pixel)
            recovered = ray * (point_camera[2] / ray[2])
            np.testing.assert_allclose(recovered, point_camera, atol=1e-9)


class TestRayGroundIntersection(TestCase):
    def test_vertical_ray(self):
        point = ray_ground_intersection([2.0, 3.0, 1.0], [0.0, 0.0, -1.0], GroundPlane())
        np.testing.assert_allclose(point, [2.0, 3.0, 0.0])

    def test_forty_five_degree_depression(self):
        height = 1.7
        direction = np.array([1.0, 0.0, -1.0]) / math.sqrt(2.0)
        point = ray_ground_intersection([0.0, 0.0, height], direction, GroundPlane())
        self.assertAlmostEqual(height, point[0], places=12)
        self.assertAlmostEqual(0.0, point[2], places=12)

    def test_parallel_ray_has_no_intersection(self):
        with self.assertRaises(NoIntersection):
            ray_ground_intersection([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], GroundPlane())

    def test_upward_ray_has_no_intersection(self):
        with self.assertRaises(NoIntersection):
            ray_ground_intersection([0.0, 0.0, 1.0], [0.0, 0.6, 0.8], GroundPlane())

    def test_intersections_lie_on_plane(self):
        rng = np.random.default_rng(6)
        normal = np.array([0.1, -0.2, 1.0])
        plane = GroundPlane(normal / np.linalg.norm(normal), 0.3)
        hits = 0
        for _ in range(500):
            origin = rng.uniform(-3, 3, size=3)
            direction = rng.normal(size=3)
            direction /= np.linalg.norm(direction)
            try:
                point = ray_ground_intersection(origin, direction, plane)
            except NoIntersection:
                continue
            hits += 1
            self.assertLess(abs(float(plane.signed_height(point))), 1e-9)
        self.assertGreater(hits, 100)


class TestCameraRig(TestCase):
    def test_default_rig_spacing_and_pitch(self):
        rig = CameraRig.default()
        self.assertEqual(4, rig.count)
        headings = []
        for camera in rig:
            forward_in_body = camera.camera_from_body.inverse().rotation[:, 2]
            headings.append(math.atan2(forward_in_body[1], forward_in_body[0]))
            self.assertAlmostEqual(-math.sin(math.radians(15.0)), forward_in_body[2], places=12)
            self.assertAlmostEqual(0.5, camera.camera_from_body.inverse().translation[2], places=12)
        for index in range(4):
            difference = (headings[(index + 1) % 4] - headings[index]) % (2 * math.pi)
            self.assertAlmostEqual(math.pi / 2, difference, places=12)

    def test_calibration_round_trip(self):
        rig = CameraRig.default()
        calibration = RigCalibration.model_validate_json(RigCalibration.from_rig(rig).model_dump_json())
        for original, restored in zip(rig, calibration.to_rig()):
            self.assertTrue(original.camera_from_body.allclose(restored.camera_from_body, atol=1e-9))
            self.assertEqual(original.intrinsics, restored.intrinsics)
