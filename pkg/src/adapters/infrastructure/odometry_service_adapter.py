import math

import numpy as np

from adapters.infrastructure.geometry.unicycle import wrap_angle
from adapters.infrastructure.visual_odometry.fuse_state import fuse_state
from adapters.infrastructure.visual_odometry.imu_predict import MAX_DT_S, imu_predict
from adapters.infrastructure.visual_odometry.landmark_map import LandmarkMap
from adapters.infrastructure.visual_odometry.pnp_estimate import inlier_rms, pnp_estimate
from adapters.infrastructure.visual_odometry.triangulate_landmark import triangulate_landmark
from configuration import pipeline_logger
from domain.CameraRig import CameraRig
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.Landmark import Landmark
from domain.OdometryConfig import OdometryConfig
from domain.Pose3 import Pose3
from domain.RobotState import RobotState
from domain.TrackSet import TrackSet
from domain.errors import (
    BehindCamera,
    DegenerateBaseline,
    DivergedSolve,
    InsufficientCorrespondences,
    LandmarkRejected,
)
from ports.services.odometry_service import OdometryService


class OdometryServiceAdapter(OdometryService):
    """IMU dead reckoning corrected by rig PnP on triangulated track landmarks and by GPS fixes.

    A track becomes a landmark once it has been seen from two camera positions at least
    min_triangulation_baseline apart; the first sighting is kept as its anchor until then.
    """

    def __init__(self, config: OdometryConfig = OdometryConfig()):
        self.config = config
        self.rig: CameraRig | None = None
        self.landmarks = LandmarkMap(config.landmark_capacity)
        self.anchors: dict[tuple[int, int], tuple[np.ndarray, Pose3]] = {}
        self._state = RobotState.at_rest()

    def reset(self, initial: RobotState, rig: CameraRig) -> None:
        self.rig = rig
        self.landmarks = LandmarkMap(self.config.landmark_capacity)
        self.anchors = {}
        self._state = initial

    @property
    def state(self) -> RobotState:
        return self._state

    def predict(self, imu: ImuSample, dt: float) -> RobotState:
        self._state = imu_predict(self._state, imu, dt, self.config.v_max)
        return self._state

    def correct_gps(self, fix: GpsFix) -> RobotState:
        self.coast_to(fix.timestamp)
        self._state = fuse_state(self._state, None, 0, fix, self.config)
        return self._state

    def coast_to(self, timestamp: float):
        """Constant-velocity prediction up to a measurement that lies beyond the fusion epoch."""
        remaining = timestamp - self._state.timestamp
        if remaining <= self.config.max_epoch_offset:
            return
        steps = math.ceil(remaining / MAX_DT_S)
        coasting = ImuSample((0.0, 0.0, 0.0), (0.0, 0.0, self._state.omega), self._state.timestamp)
        for _ in range(steps):
            self._state = imu_predict(self._state, coasting, remaining / steps, self.config.v_max)

    def correct_vision(self, track_sets: list[TrackSet], timestamp: float) -> tuple[RobotState, int]:
        self.coast_to(timestamp)
        correspondences = []
        for track_set in track_sets:
            for track in track_set.active:
                landmark = self.landmarks.get((track_set.camera_index, track.id))
                if landmark is not None:
                    correspondences.append((landmark, np.asarray(track.latest), track_set.camera_index))

        pnp_pose, inliers = None, 0
        if correspondences:
            try:
                pnp_pose, inliers = pnp_estimate(
                    correspondences,
                    self.rig,
                    self._state.pose,
                    self.config.huber_px,
                    self.config.outlier_reprojection_px,
                    self.config.max_iterations,
                )
            except (InsufficientCorrespondences, DivergedSolve) as error:
                pipeline_logger.debug(f"No vision update at {timestamp:.2f} s: {error}")

        if pnp_pose is not None:
            rejection = self.implausible(pnp_pose, correspondences)
            if rejection:
                pipeline_logger.debug(f"Vision pose at {timestamp:.2f} s dropped: {rejection}")
                pnp_pose, inliers = None, 0

        self._state = fuse_state(self._state, pnp_pose, inliers, None, self.config, measurement_time=timestamp)
        for landmark, _, _ in correspondences:
            self.landmarks.mark_observed(landmark.key)
        self.add_landmarks(track_sets)
        return self._state, inliers

    def implausible(self, pnp_pose: Pose3, correspondences) -> str | None:
        """Reason to distrust a converged PnP pose, or None when it may be fused."""
        jump = math.hypot(pnp_pose.x - self._state.x, pnp_pose.y - self._state.y)
        if jump > self.config.max_vision_jump_m:
            return f"{jump:.2f} m from the prediction"
        turn = abs(wrap_angle(pnp_pose.yaw - self._state.yaw))
        if turn > self.config.max_vision_jump_rad:
            return f"{turn:.3f} rad from the predicted heading"
        rms = inlier_rms(correspondences, self.rig, pnp_pose, self.config.outlier_reprojection_px)
        if rms > self.config.max_vision_rms_px:
            return f"inlier reprojection RMS {rms:.2f} px"
        return None

    def add_landmarks(self, track_sets: list[TrackSet]):
        active_keys = set()
        for track_set in track_sets:
            camera = self.rig[track_set.camera_index]
            world_from_camera = camera.world_from_camera(self._state.pose)
            for track in track_set.active:
                key = (track_set.camera_index, track.id)
                active_keys.add(key)
                if key in self.landmarks:
                    continue
                pixel = np.asarray(track.latest)
                anchor = self.anchors.get(key)
                if anchor is None:
                    self.anchors[key] = (pixel, world_from_camera)
                    continue
                baseline = np.linalg.norm(world_from_camera.translation - anchor[1].translation)
                if baseline < self.config.min_triangulation_baseline:
                    continue
                try:
                    point = triangulate_landmark(
                        anchor,
                        (pixel, world_from_camera),
                        camera.intrinsics,
                        self.config.triangulation_reprojection_px,
                    )
                except (DegenerateBaseline, LandmarkRejected, BehindCamera):
                    continue
                self.landmarks.insert(Landmark(track.id, point, 2, track_set.camera_index))
                del self.anchors[key]

        self.anchors = {key: anchor for key, anchor in self.anchors.items() if key in active_keys}
