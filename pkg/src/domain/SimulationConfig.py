from pydantic import BaseModel, Field

from domain.StateFeedback import StateFeedback


class SimulationConfig(BaseModel):
    seed: int = Field(0, ge=0)
    duration: float = Field(60.0, ge=0)
    dt: float = Field(0.05, gt=0)
    camera_period: float = Field(0.1, gt=0)
    gps_period: float = Field(1.0, gt=0)
    gps_enabled: bool = True
    noise_enabled: bool = True
    sigma_v: float = Field(0.01, ge=0)
    sigma_omega: float = Field(0.01, ge=0)
    sigma_accel: float = Field(0.05, ge=0)
    sigma_gyro: float = Field(0.005, ge=0)
    sigma_gps: float = Field(0.5, gt=0)
    slip_long: float = Field(0.0, ge=0, le=0.3)
    slip_lat: float = Field(0.0, ge=0, le=0.3)
    cameras_enabled: bool = True
    lidar_enabled: bool = True
    lidar_channels: int = Field(40, ge=1)
    lidar_horizontal_step: float = Field(0.5, gt=0)
    lidar_max_range: float = Field(30.0, gt=0)
    lidar_height: float = Field(0.8, gt=0)
    lidar_min_elevation: float = -25.0
    lidar_max_elevation: float = 15.0
    dot_density: float = Field(1.5, ge=0)
    scene_margin: float = Field(15.0, gt=0)
    script_speed: float = Field(1.0, gt=0)
    feedback: StateFeedback = StateFeedback.ESTIMATE

    @property
    def frame_stride(self) -> int:
        """Simulation steps per camera frame."""
        return max(1, int(round(self.camera_period / self.dt)))

    @property
    def step_count(self) -> int:
        return int(self.duration / self.dt + 1e-9)
