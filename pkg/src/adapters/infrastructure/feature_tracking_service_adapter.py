from adapters.infrastructure.features.build_pyramid import build_pyramid
from adapters.infrastructure.features.lk_track import lk_track
from adapters.infrastructure.features.manage_tracks import manage_tracks
from configuration import pipeline_logger
from domain.FeatureConfig import FeatureConfig
from domain.GrayImage import GrayImage
from domain.ImagePyramid import ImagePyramid
from domain.TrackSet import TrackSet
from ports.services.feature_tracking_service import FeatureTrackingService


class FeatureTrackingServiceAdapter(FeatureTrackingService):
    """Per-camera FAST + pyramidal LK front end. Tracks lost in a frame are reported once, then dropped."""

    def __init__(self, config: FeatureConfig = FeatureConfig()):
        self.config = config
        self.track_sets: list[TrackSet] = []
        self.pyramids: list[ImagePyramid | None] = []

    def reset(self, camera_count: int) -> None:
        self.track_sets = [TrackSet(camera_index) for camera_index in range(camera_count)]
        self.pyramids = [None] * camera_count

    def track(self, camera_index: int, image: GrayImage) -> TrackSet:
        tracker = self.config.tracker
        pyramid = build_pyramid(image, tracker.pyramid_levels)
        previous_pyramid = self.pyramids[camera_index]
        tracks = self.track_sets[camera_index]
        tracks = TrackSet(camera_index, tracks.active, tracks.next_id)

        tracking_results = None
        if previous_pyramid is not None and previous_pyramid.structure() == pyramid.structure():
            points = [track.latest for track in tracks.active]
            tracking_results = lk_track(
                previous_pyramid,
                pyramid,
                points,
                tracker.window_half,
                tracker.max_iters,
                tracker.eps,
                tracker.max_residual,
                tracker.max_forward_backward,
            )

        tracks = manage_tracks(
            tracks,
            self.config.target_tracks,
            image,
            self.config.detector,
            self.config.min_separation,
            tracking_results,
        )
        self.track_sets[camera_index] = tracks
        self.pyramids[camera_index] = pyramid
        pipeline_logger.debug(f"Camera {camera_index}: {len(tracks.active)} active tracks")
        return tracks
