from enum import IntEnum

import numpy as np


class NoiseStream(IntEnum):
    TEXTURE = 1
    DYNAMICS = 2
    IMU = 3
    GPS = 4


def substream(seed: int, stream: NoiseStream, counter: int = 0) -> np.random.Generator:
    """Counter-based generator: the same (seed, stream, counter) always yields the same draws."""
    key = np.array([seed, int(stream)], dtype=np.uint64)
    start = np.array([0, 0, counter, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=start))
