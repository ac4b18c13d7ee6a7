from pydantic import BaseModel, Field


class DetectorParameters(BaseModel):
    threshold: int = Field(20, ge=1)
    arc_length: int = Field(9, ge=9, le=12)
    nms_radius: float = Field(5.0, ge=0)


class TrackerParameters(BaseModel):
    pyramid_levels: int = Field(3, ge=1)
    window_half: int = Field(10, ge=1)
    max_iters: int = Field(30, ge=1)
    eps: float = Field(0.01, gt=0)
    max_residual: float | None = Field(0.1, gt=0)
    max_forward_backward: float | None = Field(0.5, gt=0)


class FeatureConfig(BaseModel):
    detector: DetectorParameters = DetectorParameters()
    tracker: TrackerParameters = TrackerParameters()
    target_tracks: int = Field(60, ge=0)
    min_separation: float = Field(8.0, ge=0)
