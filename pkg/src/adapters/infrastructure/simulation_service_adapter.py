import numpy as np

from adapters.infrastructure.simworld.procedural_scene import procedural_scene
from adapters.infrastructure.simworld.step_dynamics import step_dynamics
from adapters.infrastructure.simworld.synth_imu_gps import gps_fix, synth_imu_gps
from adapters.infrastructure.simworld.synth_lidar import synth_lidar
from adapters.infrastructure.simworld.synth_render import synth_render
from domain.CameraRig import CameraRig
from domain.ControlInput import ControlInput
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.Scene import Scene
from domain.SceneConfig import SceneConfig
from domain.SensorFrame import SensorFrame
from domain.SimState import SimState
from domain.SimulationConfig import SimulationConfig
from ports.services.simulation_service import SimulationService


class SimulationServiceAdapter(SimulationService):
    def __init__(self, config: SimulationConfig = SimulationConfig()):
        self.config = config

    def build_scene(self, scene_config: SceneConfig) -> Scene:
        landmarks = np.array(scene_config.landmarks, dtype=float).reshape(-1, 3) if scene_config.landmarks else None
        return procedural_scene(
            self.config.seed,
            scene_config.reference(),
            scene_config.obstacles,
            self.config.dot_density,
            self.config.scene_margin,
            landmarks,
        )

    def initial_state(self, scene_config: SceneConfig) -> SimState:
        x, y, yaw = scene_config.start_pose()
        return SimState(
            x, y, yaw, slip_long=self.config.slip_long, slip_lat=self.config.slip_lat, seed=self.config.seed
        )

    def sense(self, scene: Scene, sim: SimState, rig: CameraRig, frame_index: int) -> SensorFrame:
        config = self.config
        body_pose = sim.body_pose
        images, semantics, instances = [], [], []
        if config.cameras_enabled:
            for camera in rig:
                world_from_camera = camera.world_from_camera(body_pose)
                image, semantic, instance = synth_render(scene, (camera.intrinsics, world_from_camera))
                images.append(image)
                semantics.append(semantic)
                instances.append(instance)

        cloud = None
        if config.lidar_enabled:
            cloud = synth_lidar(
                scene,
                body_pose,
                config.lidar_channels,
                config.lidar_horizontal_step,
                config.lidar_max_range,
                config.lidar_height,
                config.lidar_min_elevation,
                config.lidar_max_elevation,
                sim.timestamp,
            )
        return SensorFrame(frame_index, sim.timestamp, images, semantics, instances, cloud)

    def first_fix(self, sim: SimState) -> GpsFix | None:
        if not self.config.gps_enabled:
            return None
        return gps_fix(sim, self.config.sigma_gps, self.config.noise_enabled)

    def advance(self, sim: SimState, control: ControlInput) -> tuple[SimState, ImuSample, GpsFix | None]:
        config = self.config
        noisy = config.noise_enabled
        next_sim = step_dynamics(
            sim, control, config.dt, config.sigma_v if noisy else 0.0, config.sigma_omega if noisy else 0.0
        )
        imu, fix = synth_imu_gps(
            sim,
            next_sim,
            config.dt,
            config.sigma_accel,
            config.sigma_gyro,
            config.sigma_gps,
            config.gps_period,
            noisy,
        )
        return next_sim, imu, fix if config.gps_enabled else None
