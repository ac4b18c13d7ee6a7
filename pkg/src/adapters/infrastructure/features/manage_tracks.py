import numpy as np

from adapters.infrastructure.features.fast_detect import CIRCLE_RADIUS, fast_detect
from domain.FeatureConfig import DetectorParameters
from domain.GrayImage import GrayImage
from domain.Track import Track
from domain.TrackSet import TrackSet
from domain.TrackingStatus import TrackingStatus
from domain.errors import FeatureError


def inside_margin(position, image: GrayImage) -> bool:
    x, y = position
    in_x = CIRCLE_RADIUS <= x <= image.width - 1 - CIRCLE_RADIUS
    return in_x and CIRCLE_RADIUS <= y <= image.height - 1 - CIRCLE_RADIUS


def apply_tracking_results(tracks: TrackSet, tracking_results, image: GrayImage) -> list[Track]:
    active_count = len(tracks.active)
    if len(tracking_results) != active_count:
        raise FeatureError(f"Got {len(tracking_results)} tracking results for {active_count} active tracks")

    results = iter(tracking_results)
    updated = []
    for track in tracks.tracks:
        if track.is_active:
            position, status = next(results)
            position = (float(position[0]), float(position[1]))
            if status == TrackingStatus.TRACKED_OK and inside_margin(position, image):
                track = track.extended(position)
            else:
                track = track.lost()
        updated.append(track)
    return updated


def manage_tracks(
    tracks: TrackSet,
    detections_needed: int,
    image: GrayImage,
    detector: DetectorParameters = DetectorParameters(),
    min_separation: float = 8.0,
    tracking_results: list | None = None,
) -> TrackSet:
    """Advance a camera's tracks by one frame.

    tracking_results, when given, holds one lk_track result per Active track in TrackSet order.
    """
    if tracking_results is None:
        updated = list(tracks.tracks)
    else:
        updated = apply_tracking_results(tracks, tracking_results, image)
    active_positions = [track.latest for track in updated if track.is_active]
    next_id = tracks.next_id

    if len(active_positions) >= detections_needed:
        return TrackSet(tracks.camera_index, updated, next_id)

    taken = np.array(active_positions, dtype=float).reshape(-1, 2)
    for keypoint in fast_detect(image, detector.threshold, detector.arc_length, detector.nms_radius):
        if len(taken) >= detections_needed:
            break
        position = np.array(keypoint.position)
        if len(taken) and np.min(np.hypot(*(taken - position).T)) < min_separation:
            continue
        updated.append(Track(next_id, tracks.camera_index, [keypoint.position]))
        next_id += 1
        taken = np.vstack([taken, position])

    return TrackSet(tracks.camera_index, updated, next_id)
