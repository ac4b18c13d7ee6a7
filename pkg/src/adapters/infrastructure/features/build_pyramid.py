import numpy as np

from domain.GrayImage import GrayImage, MIN_PROCESSING_SIZE
from domain.ImagePyramid import ImagePyramid
from domain.errors import TooManyLevels


def half_size(data: np.ndarray) -> np.ndarray:
    height, width = data.shape[0] // 2, data.shape[1] // 2
    blocks = data[: 2 * height, : 2 * width].astype(np.uint16).reshape(height, 2, width, 2)
    return ((blocks.sum(axis=(1, 3)) + 2) // 4).astype(np.uint8)


def build_pyramid(image: GrayImage, levels: int, min_level_size: int = MIN_PROCESSING_SIZE) -> ImagePyramid:
    if levels < 1:
        raise TooManyLevels(f"A pyramid needs at least one level, got {levels}")

    pyramid_levels = [image]
    for level in range(1, levels):
        previous = pyramid_levels[-1].data
        if previous.shape[0] // 2 < min_level_size or previous.shape[1] // 2 < min_level_size:
            raise TooManyLevels(
                f"Level {level} of a {image.width}x{image.height} image would fall below {min_level_size} px"
            )
        pyramid_levels.append(GrayImage(half_size(previous)))

    return ImagePyramid(pyramid_levels)
