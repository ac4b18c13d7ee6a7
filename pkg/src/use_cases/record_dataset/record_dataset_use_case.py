from pathlib import Path

import pandas as pd

from adapters.infrastructure.simworld.command_scripts import CommandScript
from configuration import pipeline_logger
from domain.CameraRig import CameraRig
from domain.DatasetLayout import DatasetLayout
from domain.DatasetManifest import DatasetManifest
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.RecordedDataset import RecordedDataset
from domain.SceneConfig import SceneConfig
from domain.SensorFrame import SensorFrame
from domain.SimState import SimState
from domain.SimulationConfig import SimulationConfig
from ports.repositories.dataset_repository import DatasetRepository
from ports.services.simulation_service import SimulationService


def truth_row(sim: SimState) -> list[float]:
    return [sim.timestamp, sim.x, sim.y, sim.yaw, sim.v, sim.omega]


def imu_row(imu: ImuSample) -> list[float]:
    return [imu.timestamp, *imu.linear_acceleration, *imu.angular_velocity]


def gps_row(fix: GpsFix) -> list[float]:
    return [fix.timestamp, *fix.position, fix.horizontal_accuracy]


class RecordDatasetUseCase:
    """Runs the simulated platform under a command script; writes the dataset layout when given a directory.

    Per step: the camera cycle is sensed on frame steps, the script commands, the dynamics advance and the
    IMU/GPS samples of the step are handed to the script.
    """

    def __init__(self, simulation_service: SimulationService, dataset_repository: DatasetRepository):
        self.simulation_service = simulation_service
        self.dataset_repository = dataset_repository

    def execute(
        self,
        scene_config: SceneConfig,
        config: SimulationConfig,
        rig: CameraRig,
        script: CommandScript,
        output_dir: Path | None = None,
    ) -> RecordedDataset:
        simulation = self.simulation_service
        scene = simulation.build_scene(scene_config)
        sim = simulation.initial_state(scene_config)
        pipeline_logger.info(
            f"Simulating {config.duration:.2f} s at dt {config.dt} s with seed {config.seed}"
            + (f" into {output_dir}" if output_dir else "")
        )

        if output_dir is not None:
            self.dataset_repository.save_calibration(output_dir, rig)
            self.dataset_repository.save_route(Path(output_dir, DatasetLayout.ROUTE), scene.route)

        truth_rows, imu_rows, gps_rows, frame_rows, sweep_rows = [truth_row(sim)], [], [], [], []
        label_count = 0
        fix = simulation.first_fix(sim)
        if fix is not None:
            gps_rows.append(gps_row(fix))
            script.observe_gps(fix)

        frame_count = 0
        for step in range(config.step_count):
            script.observe_truth(sim)
            if step % config.frame_stride == 0:
                frame = simulation.sense(scene, sim, rig, frame_count)
                if output_dir is not None:
                    label_count += self.write_frame(Path(output_dir), frame, frame_rows, sweep_rows)
                frame_count += 1
                script.observe_frame(frame)

            if script.finished(sim):
                pipeline_logger.info(f"Command script finished at {sim.timestamp:.2f} s")
                break

            control = script.command(sim)
            sim, imu, fix = simulation.advance(sim, control)
            truth_rows.append(truth_row(sim))
            imu_rows.append(imu_row(imu))
            script.observe_imu(imu, config.dt)
            if fix is not None:
                gps_rows.append(gps_row(fix))
                script.observe_gps(fix)
        script.observe_truth(sim)

        truth = pd.DataFrame(truth_rows, columns=DatasetLayout.POSE_COLUMNS)
        manifest = DatasetManifest(
            seed=config.seed,
            duration=config.duration,
            dt=config.dt,
            camera_period=config.camera_period,
            camera_count=rig.count,
            lidar_height=config.lidar_height,
            frame_count=frame_count,
            streams={
                "frames": len(frame_rows),
                "labels": label_count,
                "lidar": len(sweep_rows),
                "imu": len(imu_rows),
                "gps": len(gps_rows),
                "truth": len(truth_rows),
            },
        )

        if output_dir is None:
            return RecordedDataset(None, manifest, truth)

        repository = self.dataset_repository
        repository.save_table(Path(output_dir, DatasetLayout.FRAMES_INDEX), self.table(frame_rows, "frames"))
        repository.save_table(Path(output_dir, DatasetLayout.SWEEPS_INDEX), self.table(sweep_rows, "sweeps"))
        repository.save_table(Path(output_dir, DatasetLayout.IMU), self.table(imu_rows, "imu"))
        repository.save_table(Path(output_dir, DatasetLayout.GPS), self.table(gps_rows, "gps"))
        repository.save_table(Path(output_dir, DatasetLayout.TRUTH), truth)
        repository.save_manifest(output_dir, manifest)
        pipeline_logger.info(
            f"Recorded {frame_count} camera cycles ({len(frame_rows)} frames, {len(sweep_rows)} sweeps, "
            f"{len(imu_rows)} IMU samples, {len(gps_rows)} GPS fixes) to {output_dir}"
        )
        return RecordedDataset(Path(output_dir), manifest, truth)

    def write_frame(self, output_dir: Path, frame: SensorFrame, frame_rows: list, sweep_rows: list) -> int:
        repository = self.dataset_repository
        label_count = 0
        for camera_index, image in enumerate(frame.images):
            repository.save_frame(output_dir, camera_index, frame.index, image)
            frame_rows.append(
                [frame.timestamp, camera_index, DatasetLayout.frame_path(camera_index, frame.index).as_posix()]
            )
            semantic, instance = frame.labels(camera_index)
            if semantic is not None and instance is not None:
                repository.save_labels(output_dir, camera_index, frame.index, semantic, instance)
                label_count += 1

        if frame.cloud is not None:
            repository.save_sweep(output_dir, frame.index, frame.cloud)
            sweep_rows.append([frame.timestamp, DatasetLayout.sweep_path(frame.index).as_posix()])
        return label_count

    @staticmethod
    def table(rows: list, stream: str) -> pd.DataFrame:
        columns = {
            "frames": DatasetLayout.FRAMES_INDEX_COLUMNS,
            "sweeps": DatasetLayout.SWEEPS_INDEX_COLUMNS,
            "imu": DatasetLayout.IMU_COLUMNS,
            "gps": DatasetLayout.GPS_COLUMNS,
        }[stream]
        return pd.DataFrame(rows, columns=columns)
