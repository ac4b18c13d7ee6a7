from domain.Track import Track


class TrackSet:
    """Tracks of one camera plus the id counter that feeds new tracks; ids are never reused."""

    def __init__(self, camera_index: int, tracks: list[Track] | None = None, next_id: int = 0):
        self.camera_index = camera_index
        self.tracks: list[Track] = list(tracks or [])
        self.next_id = next_id

    @property
    def active(self) -> list[Track]:
        return [track for track in self.tracks if track.is_active]

    def by_id(self, track_id: int) -> Track:
        return next(track for track in self.tracks if track.id == track_id)

    def __len__(self):
        return len(self.tracks)

    def __eq__(self, other):
        return (
            isinstance(other, TrackSet)
            and self.camera_index == other.camera_index
            and self.next_id == other.next_id
            and self.tracks == other.tracks
        )
