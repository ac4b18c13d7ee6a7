from pydantic import BaseModel, Field

from domain.CameraRig import CameraRig


class RigConfig(BaseModel):
    """Default surround rig used when no calibration file is given."""

    calibration_path: str | None = None
    camera_count: int = Field(4, ge=1)
    mount_height: float = Field(0.5, gt=0)
    pitch_deg: float = 15.0
    width: int = Field(320, ge=16)
    height: int = Field(240, ge=16)
    focal: float = Field(160.0, gt=0)

    def default_rig(self) -> CameraRig:
        return CameraRig.default(
            self.camera_count, self.mount_height, self.pitch_deg, self.width, self.height, self.focal
        )
