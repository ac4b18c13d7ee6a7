from domain.Pose3 import Pose3


def compose_pose(a: Pose3, b: Pose3) -> Pose3:
    return a.compose(b)


def invert_pose(pose: Pose3) -> Pose3:
    return pose.inverse()
