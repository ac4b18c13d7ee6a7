from pydantic import BaseModel, Field

from configuration import GROUND_CLASS_ID
from domain.DwaConfig import DwaConfig
from domain.FeatureConfig import FeatureConfig
from domain.MappingConfig import MappingConfig
from domain.NmpcConfig import NmpcConfig
from domain.OdometryConfig import OdometryConfig
from domain.OutputConfig import OutputConfig
from domain.RigConfig import RigConfig
from domain.SegmentationConfig import SegmentationConfig
from domain.SimulationConfig import SimulationConfig


def default_mapping() -> MappingConfig:
    return MappingConfig(traversable_classes=[GROUND_CLASS_ID])


class PipelineConfig(BaseModel):
    rig: RigConfig = RigConfig()
    features: FeatureConfig = FeatureConfig()
    odometry: OdometryConfig = OdometryConfig()
    segmentation: SegmentationConfig = SegmentationConfig()
    mapping: MappingConfig = Field(default_factory=default_mapping)
    dwa: DwaConfig = DwaConfig()
    nmpc: NmpcConfig = NmpcConfig()
    simulation: SimulationConfig = SimulationConfig()
    output: OutputConfig = OutputConfig()
