from typing import NamedTuple

import numpy as np


class LidarProjection(NamedTuple):
    point_index: int
    camera_index: int
    pixel: np.ndarray
    depth: float
    world_point: np.ndarray
