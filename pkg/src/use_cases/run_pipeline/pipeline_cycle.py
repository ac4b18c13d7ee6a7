import math
import time
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

import pandas as pd

from adapters.infrastructure.simworld.command_scripts import CommandScript
from configuration import pipeline_logger
from domain.CameraRig import CameraRig
from domain.ControlInput import ControlInput
from domain.DatasetLayout import DatasetLayout
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.PipelineConfig import PipelineConfig
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.RobotState import RobotState
from domain.SensorFrame import SensorFrame
from domain.SimState import SimState
from domain.StateFeedback import StateFeedback
from domain.TrajectoryCandidate import TrajectoryCandidate
from domain.WorldModel import WorldModel
from domain.errors import AmtuError
from ports.repositories.dataset_repository import DatasetRepository
from ports.services.control_service import ControlService
from ports.services.feature_tracking_service import FeatureTrackingService
from ports.services.mapping_service import MappingService
from ports.services.odometry_service import OdometryService
from ports.services.planning_service import PlanningService
from ports.services.visualization_service import VisualizationService

ROUTE_END_TOLERANCE_M = 0.1


@dataclass
class PipelineServices:
    feature_tracking: FeatureTrackingService
    odometry: OdometryService
    mapping: MappingService
    planning: PlanningService
    control: ControlService
    visualization: VisualizationService
    dataset_repository: DatasetRepository


class StageClock:
    def __init__(self):
        self.durations_ms: dict[str, list[float]] = defaultdict(list)

    def timed(self, stage: str, function, *args):
        start = time.perf_counter()
        result = function(*args)
        self.durations_ms[stage].append(1000.0 * (time.perf_counter() - start))
        return result


class PipelineCycle(CommandScript):
    """Frame-rate perception and planning, control-rate NMPC, IMU/GPS odometry updates in between.

    Serves as the command script of a simulated run and is driven directly when replaying a dataset.
    """

    def __init__(
        self,
        services: PipelineServices,
        config: PipelineConfig,
        route: ReferenceTrajectory,
        rig: CameraRig,
        output_dir: Path,
        lidar_height: float,
    ):
        self.services = services
        self.config = config
        self.route = route
        self.rig = rig
        self.output_dir = Path(output_dir)
        self.lidar_height = lidar_height
        self.clock = StageClock()
        self.selected: TrajectoryCandidate | None = None
        self.planned_at = 0.0
        self.truth: SimState | None = None
        self.frames = 0
        self.skipped_frames = 0
        self.pose_rows: list[list[float]] = []
        self.control_rows: list[list[float]] = []
        self.box_rows: list[list[float]] = []

    def start(self, initial: RobotState):
        services = self.services
        services.feature_tracking.reset(self.rig.count)
        services.odometry.reset(initial, self.rig)
        services.mapping.reset(self.rig, initial.x, initial.y, self.lidar_height)
        services.control.reset()
        self.selected = None

    def feedback_state(self) -> RobotState:
        if self.config.simulation.feedback == StateFeedback.TRUTH and self.truth is not None:
            return self.truth.true_state
        return self.services.odometry.state

    def observe_truth(self, sim: SimState):
        self.truth = sim

    def observe_imu(self, imu: ImuSample, dt: float):
        try:
            self.services.odometry.predict(imu, dt)
        except AmtuError as error:
            pipeline_logger.warning(f"IMU sample at {imu.timestamp:.3f} s rejected: {error}")

    def observe_gps(self, fix: GpsFix):
        try:
            self.services.odometry.correct_gps(fix)
        except AmtuError as error:
            pipeline_logger.warning(f"GPS fix at {fix.timestamp:.3f} s rejected: {error}")

    def observe_frame(self, frame: SensorFrame):
        start = time.perf_counter()
        try:
            self.process_frame(frame)
        except (AmtuError, OSError) as error:
            self.skipped_frames += 1
            pipeline_logger.warning(f"Frame {frame.index} skipped: {error}")
            return
        self.frames += 1
        self.clock.durations_ms["cycle"].append(1000.0 * (time.perf_counter() - start))

    def process_frame(self, frame: SensorFrame):
        services, clock = self.services, self.clock
        track_sets = [
            clock.timed("features", services.feature_tracking.track, camera_index, image)
            for camera_index, image in enumerate(frame.images)
        ]
        _, inliers = clock.timed("odometry", services.odometry.correct_vision, track_sets, frame.timestamp)
        state = self.feedback_state()
        world_model = clock.timed("mapping", services.mapping.update, state, frame)
        selected, candidates = clock.timed("planning", services.planning.plan, state, world_model.grid, self.route)
        self.selected, self.planned_at = selected, state.timestamp
        pipeline_logger.debug(
            f"Frame {frame.index} at {frame.timestamp:.2f} s: {inliers} PnP inliers, "
            f"command ({selected.command.v:.2f}, {selected.command.omega:.2f})"
        )
        self.write_frame_artifacts(frame, track_sets, world_model, candidates, state)

    def write_frame_artifacts(self, frame: SensorFrame, track_sets, world_model: WorldModel, candidates, state):
        output, services = self.config.output, self.services
        if output.planner_dumps:
            dump = pd.DataFrame(
                [
                    [candidate.command.v, candidate.command.omega, candidate.admissible, candidate.score]
                    for candidate in candidates
                ],
                columns=DatasetLayout.PLANNER_COLUMNS,
            )
            services.dataset_repository.save_table(self.output_dir / DatasetLayout.planner_dump_path(frame.index), dump)
        if frame.index % output.grid_snapshot_stride == 0:
            grid_path = self.output_dir / DatasetLayout.grid_snapshot_path(frame.index)
            services.dataset_repository.save_grid(grid_path, world_model.grid)
            world_path = self.output_dir / DatasetLayout.world_model_path(frame.index)
            services.visualization.save_world_model(world_path, world_model, (state.x, state.y))
        if output.annotated_frames and frame.images and frame.index % output.annotated_frame_stride == 0:
            services.visualization.save_overlay(
                self.output_dir / DatasetLayout.overlay_path(frame.index), frame.images, track_sets, frame.semantics
            )
        if output.boxes:
            for box in world_model.boxes:
                self.box_rows.append(
                    [frame.index, box.camera_index, box.instance_id, box.class_id, *box.center, *box.extents, box.yaw]
                )

    def finished(self, sim: SimState) -> bool:
        if self.route.closed:
            return False
        position = self.feedback_state()
        return self.route.project((position.x, position.y)) >= self.route.length - ROUTE_END_TOLERANCE_M

    def command(self, sim: SimState) -> ControlInput:
        return self.control(self.feedback_state())

    def control(self, state: RobotState) -> ControlInput:
        """NMPC input for the latest plan; zero until the first plan exists."""
        solution = None
        elapsed_ms = 0.0
        control = ControlInput(0.0, 0.0)
        if self.selected is not None:
            start = time.perf_counter()
            try:
                control, solution = self.services.control.step(state, self.selected, self.planned_at)
            except AmtuError as error:
                pipeline_logger.warning(f"Control step at {state.timestamp:.3f} s failed: {error}")
            elapsed_ms = 1000.0 * (time.perf_counter() - start)
            self.clock.durations_ms["control"].append(elapsed_ms)

        estimate = self.services.odometry.state
        self.pose_rows.append([state.timestamp, estimate.x, estimate.y, estimate.yaw, estimate.v, estimate.omega])
        row = [
            state.timestamp,
            state.x,
            state.y,
            state.yaw,
            control.v_cmd,
            control.omega_cmd,
            solution.cost if solution is not None else math.nan,
            solution.iterations if solution is not None else 0,
        ]
        if self.config.output.timing_column:
            row.append(elapsed_ms)
        self.control_rows.append(row)
        return control

    @property
    def control_columns(self) -> list[str]:
        columns = list(DatasetLayout.CONTROL_COLUMNS)
        if self.config.output.timing_column:
            columns.append(DatasetLayout.TIMING_COLUMN)
        return columns
