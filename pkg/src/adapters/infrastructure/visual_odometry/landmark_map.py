from collections import OrderedDict

from domain.Landmark import Landmark


class LandmarkMap:
    """Landmarks keyed by (camera index, track id), capped in size; the oldest insertion is evicted first."""

    def __init__(self, capacity: int = 2000):
        self.capacity = capacity
        self.landmarks: OrderedDict[tuple[int, int], Landmark] = OrderedDict()

    def __len__(self):
        return len(self.landmarks)

    def __contains__(self, key: tuple[int, int]) -> bool:
        return key in self.landmarks

    def get(self, key: tuple[int, int]) -> Landmark | None:
        return self.landmarks.get(key)

    def insert(self, landmark: Landmark) -> list[tuple[int, int]]:
        """Adds or replaces a landmark and returns the keys evicted to stay within capacity."""
        if landmark.key in self.landmarks:
            self.landmarks[landmark.key] = landmark
            return []
        self.landmarks[landmark.key] = landmark
        evicted = []
        while len(self.landmarks) > self.capacity:
            evicted_key, _ = self.landmarks.popitem(last=False)
            evicted.append(evicted_key)
        return evicted

    def mark_observed(self, key: tuple[int, int]):
        landmark = self.landmarks.get(key)
        if landmark is not None:
            self.landmarks[key] = landmark.observed_again()
