from enum import StrEnum


class TrackingStatus(StrEnum):
    TRACKED_OK = "TrackedOk"
    LOST_LOW_TEXTURE = "LostLowTexture"
    LOST_DIVERGED = "LostDiverged"
    LOST_OUT_OF_BOUNDS = "LostOutOfBounds"


class TrackStatus(StrEnum):
    ACTIVE = "Active"
    LOST = "Lost"
