from dataclasses import dataclass, field

from domain.GrayImage import GrayImage
from domain.InstanceMap import InstanceMap
from domain.PointCloud import PointCloud
from domain.SemanticMap import SemanticMap


@dataclass
class SensorFrame:
    """One camera cycle of the rig: an image per camera, optional label maps and a sensor-frame Lidar sweep."""

    index: int
    timestamp: float
    images: list[GrayImage]
    semantics: list[SemanticMap | None] = field(default_factory=list)
    instances: list[InstanceMap | None] = field(default_factory=list)
    cloud: PointCloud | None = None

    def labels(self, camera_index: int) -> tuple[SemanticMap | None, InstanceMap | None]:
        semantic = self.semantics[camera_index] if camera_index < len(self.semantics) else None
        instance = self.instances[camera_index] if camera_index < len(self.instances) else None
        return semantic, instance
