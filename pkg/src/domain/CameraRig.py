import numpy as np

from domain.CameraIntrinsics import CameraIntrinsics
from domain.Pose3 import Pose3
from domain.errors import GeometryError

MOUNT_FROM_OPTICAL = np.array([[0.0, 0.0, 1.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]])

DEFAULT_CAMERA_COUNT = 4
DEFAULT_MOUNT_HEIGHT_M = 0.5
DEFAULT_PITCH_DEG = 15.0
DEFAULT_WIDTH = 320
DEFAULT_HEIGHT = 240
DEFAULT_FOCAL_PX = 160.0


class RigCamera:
    def __init__(self, intrinsics: CameraIntrinsics, camera_from_body: Pose3):
        self.intrinsics = intrinsics
        self.camera_from_body = camera_from_body

    @staticmethod
    def from_mount(
        intrinsics: CameraIntrinsics, yaw: float, pitch: float, roll: float, mount_translation=(0.0, 0.0, 0.0)
    ):
        """Builds a camera from its mount: Z-Y-X angles in radians of the forward axis in the body frame.

        Positive pitch looks down. The stored extrinsic maps body points into the optical frame (x right, y down,
        z forward).
        """
        body_from_mount = Pose3.from_ypr(yaw, pitch, roll, mount_translation)
        body_from_optical = body_from_mount.compose(Pose3(MOUNT_FROM_OPTICAL, np.zeros(3)))
        return RigCamera(intrinsics, body_from_optical.inverse())

    def world_from_camera(self, world_from_body: Pose3) -> Pose3:
        return world_from_body.compose(self.camera_from_body.inverse())

    def camera_from_world(self, world_from_body: Pose3) -> Pose3:
        return self.camera_from_body.compose(world_from_body.inverse())


class CameraRig:
    def __init__(self, cameras: list[RigCamera]):
        if len(cameras) < 1:
            raise GeometryError("A camera rig needs at least one camera")
        self.cameras: list[RigCamera] = list(cameras)

    @property
    def count(self) -> int:
        return len(self.cameras)

    def __getitem__(self, index: int) -> RigCamera:
        return self.cameras[index]

    def __iter__(self):
        return iter(self.cameras)

    @staticmethod
    def default(
        camera_count: int = DEFAULT_CAMERA_COUNT,
        mount_height: float = DEFAULT_MOUNT_HEIGHT_M,
        pitch_deg: float = DEFAULT_PITCH_DEG,
        width: int = DEFAULT_WIDTH,
        height: int = DEFAULT_HEIGHT,
        focal: float = DEFAULT_FOCAL_PX,
    ):
        """Assumed surround rig: cameras 360/count degrees apart in yaw, all at the same height and pitch."""
        intrinsics = CameraIntrinsics(fx=focal, fy=focal, cx=width / 2.0, cy=height / 2.0, width=width, height=height)
        cameras = [
            RigCamera.from_mount(
                intrinsics,
                yaw=np.deg2rad(360.0 * index / camera_count),
                pitch=np.deg2rad(pitch_deg),
                roll=0.0,
                mount_translation=(0.0, 0.0, mount_height),
            )
            for index in range(camera_count)
        ]
        return CameraRig(cameras)
