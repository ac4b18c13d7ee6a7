import numpy as np
from pydantic import BaseModel
from scipy.spatial.transform import Rotation

from domain.CameraIntrinsics import CameraIntrinsics
from domain.CameraRig import CameraRig, RigCamera, MOUNT_FROM_OPTICAL
from domain.Pose3 import Pose3


class CameraCalibration(BaseModel):
    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int
    yaw_deg: float
    pitch_deg: float
    roll_deg: float = 0.0
    x_m: float = 0.0
    y_m: float = 0.0
    z_m: float = 0.0

    def to_rig_camera(self) -> RigCamera:
        intrinsics = CameraIntrinsics(
            fx=self.fx, fy=self.fy, cx=self.cx, cy=self.cy, width=self.width, height=self.height
        )
        return RigCamera.from_mount(
            intrinsics,
            yaw=np.deg2rad(self.yaw_deg),
            pitch=np.deg2rad(self.pitch_deg),
            roll=np.deg2rad(self.roll_deg),
            mount_translation=(self.x_m, self.y_m, self.z_m),
        )

    @staticmethod
    def from_rig_camera(camera: RigCamera):
        body_from_optical = camera.camera_from_body.inverse()
        body_from_mount = body_from_optical.compose(Pose3(MOUNT_FROM_OPTICAL.T, np.zeros(3)))
        yaw, pitch, roll = Rotation.from_matrix(body_from_mount.rotation).as_euler("ZYX", degrees=True)
        intrinsics = camera.intrinsics
        return CameraCalibration(
            fx=intrinsics.fx,
            fy=intrinsics.fy,
            cx=intrinsics.cx,
            cy=intrinsics.cy,
            width=intrinsics.width,
            height=intrinsics.height,
            yaw_deg=float(yaw),
            pitch_deg=float(pitch),
            roll_deg=float(roll),
            x_m=float(body_from_mount.translation[0]),
            y_m=float(body_from_mount.translation[1]),
            z_m=float(body_from_mount.translation[2]),
        )


class RigCalibration(BaseModel):
    cameras: list[CameraCalibration]

    def to_rig(self) -> CameraRig:
        return CameraRig([camera.to_rig_camera() for camera in self.cameras])

    @staticmethod
    def from_rig(rig: CameraRig):
        return RigCalibration(cameras=[CameraCalibration.from_rig_camera(camera) for camera in rig])
