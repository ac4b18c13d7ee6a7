from pydantic import BaseModel, Field

MANIFEST_VERSION = 1


class DatasetManifest(BaseModel):
    version: int = MANIFEST_VERSION
    seed: int = 0
    duration: float = Field(0.0, ge=0)
    dt: float = Field(0.05, gt=0)
    camera_period: float = Field(0.1, gt=0)
    camera_count: int = Field(4, ge=1)
    lidar_height: float = Field(0.8, gt=0)
    frame_count: int = Field(0, ge=0)
    streams: dict[str, int] = {}

    @property
    def total_frames(self) -> int:
        return self.frame_count * self.camera_count
