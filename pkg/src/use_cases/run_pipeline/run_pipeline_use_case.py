from pathlib import Path

import numpy as np
import pandas as pd

from configuration import pipeline_logger
from domain.CameraRig import CameraRig
from domain.DatasetLayout import DatasetLayout
from domain.DatasetManifest import DatasetManifest
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.PipelineConfig import PipelineConfig
from domain.PipelineSummary import PipelineSummary
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.RobotState import RobotState
from domain.SceneConfig import SceneConfig
from domain.SensorFrame import SensorFrame
from domain.StageTiming import StageTiming
from domain.errors import AmtuError, IoFailure
from use_cases.record_dataset.record_dataset_use_case import RecordDatasetUseCase
from use_cases.run_pipeline.pipeline_cycle import ROUTE_END_TOLERANCE_M, PipelineCycle, PipelineServices

IMU_EVENT, GPS_EVENT, FRAME_EVENT, CONTROL_EVENT = range(4)


def trajectory_metrics(poses: pd.DataFrame, truth: pd.DataFrame, route: ReferenceTrajectory) -> dict:
    """Drift of the final estimate against ground truth and cross-track error of the driven path.

    The driven path is the ground truth resampled at the pose-log times, or the estimate when there is no truth.
    Route completion and the final cross-track error use the last truth sample, where the run stopped.
    """
    if poses.empty:
        return {}
    times = poses["timestamp_s"].to_numpy(dtype=float)
    estimate = poses[["x", "y"]].to_numpy(dtype=float)
    metrics = {}
    if truth.empty:
        driven = estimate
    else:
        truth_times = truth["timestamp_s"].to_numpy(dtype=float)
        driven = np.column_stack(
            [np.interp(times, truth_times, truth[axis].to_numpy(dtype=float)) for axis in ("x", "y")]
        )
        metrics["final_drift"] = float(np.linalg.norm(estimate[-1] - driven[-1]))

    path_length = float(np.linalg.norm(np.diff(driven, axis=0), axis=1).sum())
    metrics["path_length"] = path_length
    if "final_drift" in metrics and path_length > 0:
        metrics["drift_fraction"] = metrics["final_drift"] / path_length

    errors = np.array([route.cross_track_error(position) for position in driven])
    metrics["cross_track_rms"] = float(np.sqrt(np.mean(errors**2)))
    end = driven[-1] if truth.empty else truth[["x", "y"]].to_numpy(dtype=float)[-1]
    metrics["final_cross_track"] = route.cross_track_error(end)
    metrics["route_completed"] = not route.closed and route.project(end) >= route.length - ROUTE_END_TOLERANCE_M
    return metrics


class RunPipelineUseCase:
    def __init__(self, services: PipelineServices, record_dataset_use_case: RecordDatasetUseCase):
        self.services = services
        self.record_dataset_use_case = record_dataset_use_case

    def execute_sim(
        self, scene_config: SceneConfig, config: PipelineConfig, rig: CameraRig, output_dir: Path
    ) -> PipelineSummary:
        route = scene_config.reference()
        cycle = PipelineCycle(self.services, config, route, rig, output_dir, config.simulation.lidar_height)
        x, y, yaw = scene_config.start_pose()
        cycle.start(RobotState.at_rest(x, y, yaw))
        pipeline_logger.info(f"Closed-loop simulation on a {route.length:.1f} m route, output in {output_dir}")
        recorded = self.record_dataset_use_case.execute(scene_config, config.simulation, rig, cycle)
        return self.finish(cycle, "sim", recorded.truth, Path(output_dir))

    def execute_dataset(
        self,
        dataset_dir: Path,
        config: PipelineConfig,
        rig: CameraRig,
        output_dir: Path,
        route: ReferenceTrajectory | None = None,
    ) -> PipelineSummary:
        dataset_dir = Path(dataset_dir)
        if not dataset_dir.is_dir():
            raise IoFailure(f"Dataset directory {dataset_dir} does not exist")
        repository = self.services.dataset_repository

        if Path(dataset_dir, DatasetLayout.MANIFEST).exists():
            manifest = repository.load_manifest(dataset_dir)
        else:
            pipeline_logger.warning(f"{dataset_dir} has no manifest, reading it as an empty dataset")
            manifest = DatasetManifest(camera_count=rig.count, lidar_height=config.simulation.lidar_height)
        if Path(dataset_dir, DatasetLayout.CALIBRATION).exists():
            rig = repository.load_calibration(dataset_dir)
        if route is None and Path(dataset_dir, DatasetLayout.ROUTE).exists():
            route = repository.load_route(Path(dataset_dir, DatasetLayout.ROUTE))
        if route is None:
            pipeline_logger.warning("No route given or recorded, planning along the default straight route")
            route = SceneConfig().reference()

        imu = repository.load_table(Path(dataset_dir, DatasetLayout.IMU), DatasetLayout.IMU_COLUMNS)
        gps = repository.load_table(Path(dataset_dir, DatasetLayout.GPS), DatasetLayout.GPS_COLUMNS)
        frames = repository.load_table(
            Path(dataset_dir, DatasetLayout.FRAMES_INDEX), DatasetLayout.FRAMES_INDEX_COLUMNS
        )
        sweeps = repository.load_table(
            Path(dataset_dir, DatasetLayout.SWEEPS_INDEX), DatasetLayout.SWEEPS_INDEX_COLUMNS
        )
        truth = repository.load_table(Path(dataset_dir, DatasetLayout.TRUTH), DatasetLayout.POSE_COLUMNS)

        cycle = PipelineCycle(self.services, config, route, rig, output_dir, manifest.lidar_height)
        if truth.empty:
            x, y, yaw = SceneConfig(route=[tuple(point) for point in route.waypoints]).start_pose()
            initial = RobotState.at_rest(x, y, yaw)
        else:
            first = truth.iloc[0]
            initial = RobotState.at_rest(float(first["x"]), float(first["y"]), float(first["yaw_rad"]))
            initial = RobotState(initial.pose, 0.0, 0.0, float(first["timestamp_s"]))
        cycle.start(initial)
        pipeline_logger.info(
            f"Replaying {dataset_dir}: {manifest.frame_count} camera cycles, {len(imu)} IMU samples, "
            f"{len(gps)} GPS fixes"
        )

        cameras_by_time = {
            float(timestamp): sorted(int(camera) for camera in group["camera_index"])
            for timestamp, group in frames.groupby("timestamp_s")
        }
        sweep_times = {float(timestamp) for timestamp in sweeps["timestamp_s"]}
        frame_times = sorted(set(cameras_by_time) | sweep_times)

        events = [(float(row.timestamp_s), IMU_EVENT, row) for row in imu.itertuples(index=False)]
        events += [(float(row.timestamp_s), GPS_EVENT, row) for row in gps.itertuples(index=False)]
        events += [(timestamp, FRAME_EVENT, index) for index, timestamp in enumerate(frame_times)]
        events += [(initial.timestamp, CONTROL_EVENT, None)]
        events += [(float(row.timestamp_s), CONTROL_EVENT, None) for row in imu.itertuples(index=False)]
        events.sort(key=lambda event: (event[0], event[1]))

        previous_imu_time = initial.timestamp
        for timestamp, kind, payload in events:
            try:
                if kind == IMU_EVENT:
                    dt = timestamp - previous_imu_time if timestamp > previous_imu_time else manifest.dt
                    previous_imu_time = timestamp
                    acceleration = (payload.ax, payload.ay, payload.az)
                    cycle.observe_imu(ImuSample(acceleration, (payload.gx, payload.gy, payload.gz), timestamp), dt)
                elif kind == GPS_EVENT:
                    cycle.observe_gps(GpsFix((payload.x_m, payload.y_m), payload.acc_m, timestamp))
                elif kind == FRAME_EVENT:
                    frame = self.load_frame(
                        dataset_dir,
                        payload,
                        timestamp,
                        cameras_by_time.get(timestamp, []),
                        timestamp in sweep_times,
                        config.segmentation.num_classes,
                    )
                    cycle.observe_frame(frame)
                else:
                    cycle.control(cycle.feedback_state())
            except (AmtuError, OSError) as error:
                if kind == FRAME_EVENT:
                    cycle.skipped_frames += 1
                pipeline_logger.warning(f"Skipping the record at {timestamp:.3f} s: {error}")

        return self.finish(cycle, "dataset", truth, Path(output_dir))

    def load_frame(
        self,
        dataset_dir: Path,
        index: int,
        timestamp: float,
        cameras: list[int],
        has_sweep: bool,
        num_classes: int,
    ) -> SensorFrame:
        repository = self.services.dataset_repository
        images, semantics, instances = [], [], []
        for camera_index in cameras:
            images.append(repository.load_frame(dataset_dir, camera_index, index))
            labels = repository.load_labels(dataset_dir, camera_index, index, num_classes)
            semantics.append(labels[0] if labels else None)
            instances.append(labels[1] if labels else None)
        cloud = repository.load_sweep(dataset_dir, index, timestamp) if has_sweep else None
        return SensorFrame(index, timestamp, images, semantics, instances, cloud)

    def finish(self, cycle: PipelineCycle, mode: str, truth: pd.DataFrame, output_dir: Path) -> PipelineSummary:
        repository, visualization = self.services.dataset_repository, self.services.visualization
        config = cycle.config
        poses = pd.DataFrame(cycle.pose_rows, columns=DatasetLayout.POSE_COLUMNS)
        artifacts = [
            repository.save_table(output_dir / DatasetLayout.POSE_LOG, poses),
            repository.save_table(
                output_dir / DatasetLayout.CONTROL_LOG, pd.DataFrame(cycle.control_rows, columns=cycle.control_columns)
            ),
        ]
        if not truth.empty:
            artifacts.append(repository.save_table(output_dir / DatasetLayout.TRUTH_LOG, truth))
        if config.output.boxes:
            boxes = pd.DataFrame(cycle.box_rows, columns=DatasetLayout.BOXES_3D_COLUMNS)
            artifacts.append(repository.save_table(output_dir / DatasetLayout.BOXES_3D, boxes))

        timings = {stage: StageTiming.from_samples(durations) for stage, durations in cycle.clock.durations_ms.items()}
        if config.output.plots and not poses.empty:
            artifacts.append(
                visualization.save_trajectory_plot(
                    output_dir / "trajectory.png",
                    cycle.route.waypoints,
                    poses[["x", "y"]].to_numpy(dtype=float),
                    None if truth.empty else truth[["x", "y"]].to_numpy(dtype=float),
                )
            )
            if timings:
                artifacts.append(
                    visualization.save_timing_plot(output_dir / "timing.png", cycle.clock.durations_ms, timings)
                )
        for directory in ("planner", "grids", "overlays"):
            if (output_dir / directory).is_dir():
                artifacts.append(output_dir / directory)

        summary = PipelineSummary(
            mode=mode,
            frames=cycle.frames,
            skipped_frames=cycle.skipped_frames,
            control_cycles=len(cycle.control_rows),
            duration=float(poses["timestamp_s"].iloc[-1] - poses["timestamp_s"].iloc[0]) if len(poses) else 0.0,
            stage_timing=timings,
            **trajectory_metrics(poses, truth, cycle.route),
        )
        summary_text = output_dir / DatasetLayout.SUMMARY_TEXT
        summary_json = output_dir / DatasetLayout.SUMMARY_JSON
        summary.artifacts = [str(path) for path in artifacts + [summary_text, summary_json]]
        repository.save_text(summary_text, summary.report())
        repository.save_text(summary_json, summary.model_dump_json(indent=2))

        for line in summary.report().splitlines():
            pipeline_logger.info(line)
        for path in summary.artifacts:
            pipeline_logger.info(f"Wrote {path}")
        return summary
