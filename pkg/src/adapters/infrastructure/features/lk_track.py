import numpy as np
from scipy.ndimage import map_coordinates

from domain.ImagePyramid import ImagePyramid
from domain.TrackingStatus import TrackingStatus
from domain.errors import PyramidMismatch

MIN_EIGENVALUE_PER_PIXEL = 1e-4
DIVERGED_UPDATE_PX = 1.0
MAX_RESIDUAL_RMS = 0.1
MAX_FORWARD_BACKWARD_PX = 0.5


def sample(image: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    return map_coordinates(image, [ys, xs], order=1, mode="nearest")


def window_offsets(window_half: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.mgrid[-window_half : window_half + 1, -window_half : window_half + 1]
    return cols.ravel().astype(float), rows.ravel().astype(float)


def outside(xs: np.ndarray, ys: np.ndarray, width: int, height: int, margin: float = 0.0) -> np.ndarray:
    return (
        (xs.min(axis=1) < margin)
        | (ys.min(axis=1) < margin)
        | (xs.max(axis=1) > width - 1 - margin)
        | (ys.max(axis=1) > height - 1 - margin)
    )


def pyramidal_flow(
    prev: ImagePyramid, next: ImagePyramid, points: np.ndarray, window_half: int, max_iters: int, eps: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(tracked positions, statuses, level-0 photometric residual RMS) for one tracking direction.

    Each level refines the residual flow d on top of the guess g propagated from the coarser level
    (g ← 2·(g + d)). Statuses are decided on level 0; coarser levels only clamp at the borders and
    skip refinement where the structure tensor is ill-conditioned.
    """
    count = len(points)
    offset_x, offset_y = window_offsets(window_half)
    min_eigenvalue = MIN_EIGENVALUE_PER_PIXEL * offset_x.size

    status = np.full(count, TrackingStatus.TRACKED_OK, dtype=object)
    alive = np.ones(count, dtype=bool)
    guess = np.zeros((count, 2))
    flow = np.zeros((count, 2))
    residual_rms = np.zeros(count)

    for level in reversed(range(prev.level_count)):
        scale = 2.0**level
        prev_image = prev.levels[level].data.astype(float) / 255.0
        next_image = next.levels[level].data.astype(float) / 255.0
        height, width = prev_image.shape

        centers = (points + 0.5) / scale - 0.5
        window_x = centers[:, :1] + offset_x
        window_y = centers[:, 1:] + offset_y

        if level == 0:
            out_of_bounds = alive & outside(window_x, window_y, width, height, margin=1.0)
            status[out_of_bounds] = TrackingStatus.LOST_OUT_OF_BOUNDS
            alive &= ~out_of_bounds

        template = sample(prev_image, window_x, window_y)
        grad_x = (sample(prev_image, window_x + 1, window_y) - sample(prev_image, window_x - 1, window_y)) / 2
        grad_y = (sample(prev_image, window_x, window_y + 1) - sample(prev_image, window_x, window_y - 1)) / 2
        gxx = (grad_x * grad_x).sum(axis=1)
        gxy = (grad_x * grad_y).sum(axis=1)
        gyy = (grad_y * grad_y).sum(axis=1)
        smallest_eigenvalue = (gxx + gyy) / 2 - np.sqrt(((gxx - gyy) / 2) ** 2 + gxy**2)
        determinant = gxx * gyy - gxy**2

        textured = smallest_eigenvalue >= min_eigenvalue
        if level == 0:
            low_texture = alive & ~textured
            status[low_texture] = TrackingStatus.LOST_LOW_TEXTURE
            alive &= ~low_texture

        residual = np.zeros((count, 2))
        converged = ~(alive & textured)
        last_update = np.zeros(count)

        for _ in range(max_iters):
            indices = np.nonzero(~converged)[0]
            if indices.size == 0:
                break
            shift = guess[indices] + residual[indices]
            moved_x = window_x[indices] + shift[:, :1]
            moved_y = window_y[indices] + shift[:, 1:]

            if level == 0:
                left = outside(moved_x, moved_y, width, height)
                if left.any():
                    status[indices[left]] = TrackingStatus.LOST_OUT_OF_BOUNDS
                    alive[indices[left]] = False
                    converged[indices[left]] = True
                    indices, moved_x, moved_y = indices[~left], moved_x[~left], moved_y[~left]
                    if indices.size == 0:
                        break

            difference = template[indices] - sample(next_image, moved_x, moved_y)
            bx = (difference * grad_x[indices]).sum(axis=1)
            by = (difference * grad_y[indices]).sum(axis=1)
            det = determinant[indices]
            update = np.column_stack(
                [(gyy[indices] * bx - gxy[indices] * by) / det, (gxx[indices] * by - gxy[indices] * bx) / det]
            )
            residual[indices] += update
            last_update[indices] = np.hypot(update[:, 0], update[:, 1])
            converged[indices[last_update[indices] < eps]] = True

        if level == 0:
            diverged = alive & ~converged & (last_update >= DIVERGED_UPDATE_PX)
            status[diverged] = TrackingStatus.LOST_DIVERGED
            alive &= ~diverged
            flow = guess + residual
            indices = np.nonzero(alive)[0]
            if indices.size:
                warped_x, warped_y = window_x[indices] + flow[indices, :1], window_y[indices] + flow[indices, 1:]
                warped = sample(next_image, warped_x, warped_y)
                residual_rms[indices] = np.sqrt(np.mean((template[indices] - warped) ** 2, axis=1))
        else:
            guess = 2.0 * (guess + residual)

    return points + flow, status, residual_rms


def lk_track(
    prev: ImagePyramid,
    next: ImagePyramid,
    points,
    window_half: int = 10,
    max_iters: int = 30,
    eps: float = 0.01,
    max_residual: float | None = MAX_RESIDUAL_RMS,
    max_forward_backward: float | None = MAX_FORWARD_BACKWARD_PX,
) -> list[tuple[np.ndarray, TrackingStatus]]:
    """Pyramidal Lucas-Kanade, vectorized over points.

    A converged point is still LOST_DIVERGED when its final window differs from the template by more than
    max_residual RMS (intensities in [0, 1]), or when tracking it back from next to prev lands more than
    max_forward_backward px from where it started. Either check is skipped when its bound is None.
    """
    if prev.structure() != next.structure():
        raise PyramidMismatch(f"Pyramid structures differ: {prev.structure()} vs {next.structure()}")

    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) == 0:
        return []

    positions, status, residual_rms = pyramidal_flow(prev, next, points, window_half, max_iters, eps)

    if max_residual is not None:
        status[(status == TrackingStatus.TRACKED_OK) & (residual_rms > max_residual)] = TrackingStatus.LOST_DIVERGED

    tracked = np.nonzero(status == TrackingStatus.TRACKED_OK)[0]
    if max_forward_backward is not None and tracked.size:
        returned, back_status, _ = pyramidal_flow(next, prev, positions[tracked], window_half, max_iters, eps)
        error = np.linalg.norm(returned - points[tracked], axis=1)
        left = back_status == TrackingStatus.LOST_OUT_OF_BOUNDS
        inconsistent = ~left & ((back_status != TrackingStatus.TRACKED_OK) | (error > max_forward_backward))
        status[tracked[left]] = TrackingStatus.LOST_OUT_OF_BOUNDS
        status[tracked[inconsistent]] = TrackingStatus.LOST_DIVERGED

    return [(positions[i], status[i]) for i in range(len(points))]
