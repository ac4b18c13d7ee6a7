from domain.TrackingStatus import TrackStatus


class Track:
    def __init__(
        self, track_id: int, camera_index: int, positions: list[tuple[float, float]], status=TrackStatus.ACTIVE
    ):
        self.id = track_id
        self.camera_index = camera_index
        self.positions: list[tuple[float, float]] = list(positions)
        self.status: TrackStatus = status

    @property
    def is_active(self) -> bool:
        return self.status == TrackStatus.ACTIVE

    @property
    def latest(self) -> tuple[float, float]:
        return self.positions[-1]

    def extended(self, position: tuple[float, float]) -> "Track":
        return Track(self.id, self.camera_index, self.positions + [position], self.status)

    def lost(self) -> "Track":
        return Track(self.id, self.camera_index, self.positions, TrackStatus.LOST)

    def __eq__(self, other):
        return (
            isinstance(other, Track)
            and self.id == other.id
            and self.camera_index == other.camera_index
            and self.positions == other.positions
            and self.status == other.status
        )

    def __repr__(self):
        return f"Track(id={self.id}, camera={self.camera_index}, length={len(self.positions)}, {self.status})"
