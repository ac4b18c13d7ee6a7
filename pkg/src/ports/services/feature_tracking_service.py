from abc import ABC, abstractmethod

from domain.GrayImage import GrayImage
from domain.TrackSet import TrackSet


class FeatureTrackingService(ABC):
    @abstractmethod
    def reset(self, camera_count: int) -> None:
        pass

    @abstractmethod
    def track(self, camera_index: int, image: GrayImage) -> TrackSet:
        pass
