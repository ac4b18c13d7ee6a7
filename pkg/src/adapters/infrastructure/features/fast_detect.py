import numpy as np
from scipy.ndimage import maximum_filter

from domain.GrayImage import GrayImage
from domain.Keypoint import Keypoint

CIRCLE_OFFSETS = (
    (0, -3),
    (1, -3),
    (2, -2),
    (3, -1),
    (3, 0),
    (3, 1),
    (2, 2),
    (1, 3),
    (0, 3),
    (-1, 3),
    (-2, 2),
    (-3, 1),
    (-3, 0),
    (-3, -1),
    (-2, -2),
    (-1, -3),
)
CIRCLE_RADIUS = 3


def longest_circular_arc(mask: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(length, weight sum) of the longest contiguous run of the circular mask, per pixel."""
    circle_size = mask.shape[0]
    run = np.zeros(mask.shape[1:], dtype=np.int16)
    run_sum = np.zeros(mask.shape[1:], dtype=np.int32)
    longest = np.zeros(mask.shape[1:], dtype=np.int16)
    longest_sum = np.zeros(mask.shape[1:], dtype=np.int32)
    for index in range(2 * circle_size):
        flags = mask[index % circle_size]
        run = (run + 1) * flags
        run_sum = (run_sum + weights[index % circle_size]) * flags
        longer = run > longest
        longest = np.where(longer, run, longest)
        longest_sum = np.where(longer, run_sum, longest_sum)
    full_ring = mask.all(axis=0)
    longest_sum = np.where(full_ring, (weights * mask).sum(axis=0, dtype=np.int32), longest_sum)
    return np.minimum(longest, circle_size), longest_sum


def segment_test_scores(image: GrayImage, threshold: int, arc_length: int) -> np.ndarray:
    """Corner score per pixel before suppression; zero where the segment test fails or on the 3 px border.

    The score sums the absolute differences over the qualifying arc only.
    """
    image.check_processing_size()
    data = image.data.astype(np.int16)
    height, width = data.shape
    r = CIRCLE_RADIUS
    center = data[r : height - r, r : width - r]
    ring = np.stack([data[r + dy : height - r + dy, r + dx : width - r + dx] for dx, dy in CIRCLE_OFFSETS])
    difference = ring - center
    magnitude = np.abs(difference).astype(np.int32)

    bright_length, bright_score = longest_circular_arc(difference > threshold, magnitude)
    dark_length, dark_score = longest_circular_arc(difference < -threshold, magnitude)
    bright_corner = bright_length >= arc_length
    dark_corner = dark_length >= arc_length

    scores = np.zeros((height, width), dtype=np.int32)
    scores[r : height - r, r : width - r] = np.where(bright_corner, bright_score, np.where(dark_corner, dark_score, 0))
    return scores


def disk_footprint(radius: float) -> np.ndarray:
    reach = int(np.floor(radius))
    rows, cols = np.mgrid[-reach : reach + 1, -reach : reach + 1]
    return rows**2 + cols**2 <= radius**2


def suppress_non_maxima(scores: np.ndarray, nms_radius: float) -> np.ndarray:
    local_max = maximum_filter(scores, footprint=disk_footprint(nms_radius), mode="constant", cval=0)
    return (scores > 0) & (scores >= local_max)


def fast_detect(image: GrayImage, threshold: int = 20, arc_length: int = 9, nms_radius: float = 5.0) -> list[Keypoint]:
    scores = segment_test_scores(image, threshold, arc_length)
    rows, cols = np.nonzero(suppress_non_maxima(scores, nms_radius))
    kept = scores[rows, cols]
    order = np.lexsort((cols, rows, -kept))
    return [Keypoint(x=float(cols[i]), y=float(rows[i]), score=float(kept[i])) for i in order]
