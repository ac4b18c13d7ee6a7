from pydantic import BaseModel, Field


class OdometryConfig(BaseModel):
    v_max: float = Field(1.5, gt=0)
    min_triangulation_baseline: float = Field(0.05, gt=0)
    landmark_capacity: int = Field(2000, ge=1)
    triangulation_reprojection_px: float = 2.0
    outlier_reprojection_px: float = 3.0
    huber_px: float = 2.0
    max_iterations: int = Field(50, ge=1)
    full_gain_inliers: int = Field(30, ge=1)
    vision_gain: float = Field(0.8, ge=0, le=1)
    gps_process_sigma: float = Field(0.5, gt=0)
    max_gps_gain: float = Field(0.5, ge=0, le=1)
    max_epoch_offset: float = Field(0.05, gt=0)
    max_vision_jump_m: float = Field(0.3, gt=0)
    max_vision_jump_rad: float = Field(0.1, gt=0)
    max_vision_rms_px: float = Field(1.5, gt=0)
