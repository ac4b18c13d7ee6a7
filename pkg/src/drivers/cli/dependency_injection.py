from dataclasses import dataclass
from pathlib import Path

from adapters.infrastructure.control_service_adapter import ControlServiceAdapter
from adapters.infrastructure.feature_tracking_service_adapter import FeatureTrackingServiceAdapter
from adapters.infrastructure.mapping_service_adapter import MappingServiceAdapter
from adapters.infrastructure.odometry_service_adapter import OdometryServiceAdapter
from adapters.infrastructure.planning_service_adapter import PlanningServiceAdapter
from adapters.infrastructure.segmentation_evaluation_service_adapter import SegmentationEvaluationServiceAdapter
from adapters.infrastructure.simulation_service_adapter import SimulationServiceAdapter
from adapters.infrastructure.simworld.command_scripts import RouteFollowingScript
from adapters.infrastructure.visualization_service_adapter import VisualizationServiceAdapter
from adapters.storage.file_system_repository import FileSystemRepository
from domain.CameraRig import CameraRig
from domain.PipelineConfig import PipelineConfig
from domain.SceneConfig import SceneConfig
from use_cases.estimate_coverage.estimate_coverage_use_case import EstimateCoverageUseCase
from use_cases.evaluate_segmentation.evaluate_segmentation_use_case import EvaluateSegmentationUseCase
from use_cases.record_dataset.record_dataset_use_case import RecordDatasetUseCase
from use_cases.run_pipeline.pipeline_cycle import PipelineServices
from use_cases.run_pipeline.run_pipeline_use_case import RunPipelineUseCase


@dataclass
class Dependencies:
    rig: CameraRig
    dataset_repository: FileSystemRepository
    run_pipeline_use_case: RunPipelineUseCase
    record_dataset_use_case: RecordDatasetUseCase
    evaluate_segmentation_use_case: EvaluateSegmentationUseCase
    estimate_coverage_use_case: EstimateCoverageUseCase

    def route_following_script(self, scene_config: SceneConfig, speed: float) -> RouteFollowingScript:
        return RouteFollowingScript(scene_config.reference(), speed)


def setup_rig(config: PipelineConfig, repository: FileSystemRepository) -> CameraRig:
    if config.rig.calibration_path:
        return repository.load_calibration(Path(config.rig.calibration_path))
    return config.rig.default_rig()


def setup_dependencies(config: PipelineConfig = PipelineConfig()) -> Dependencies:
    dataset_repository = FileSystemRepository()
    simulation_service = SimulationServiceAdapter(config.simulation)

    services = PipelineServices(
        feature_tracking=FeatureTrackingServiceAdapter(config.features),
        odometry=OdometryServiceAdapter(config.odometry),
        mapping=MappingServiceAdapter(config.mapping, config.segmentation.min_area),
        planning=PlanningServiceAdapter(config.dwa),
        control=ControlServiceAdapter(config.nmpc),
        visualization=VisualizationServiceAdapter(),
        dataset_repository=dataset_repository,
    )

    record_dataset_use_case = RecordDatasetUseCase(
        simulation_service=simulation_service, dataset_repository=dataset_repository
    )
    run_pipeline_use_case = RunPipelineUseCase(services=services, record_dataset_use_case=record_dataset_use_case)
    evaluate_segmentation_use_case = EvaluateSegmentationUseCase(
        evaluation_service=SegmentationEvaluationServiceAdapter(config.segmentation),
        dataset_repository=dataset_repository,
    )

    return Dependencies(
        rig=setup_rig(config, dataset_repository),
        dataset_repository=dataset_repository,
        run_pipeline_use_case=run_pipeline_use_case,
        record_dataset_use_case=record_dataset_use_case,
        evaluate_segmentation_use_case=evaluate_segmentation_use_case,
        estimate_coverage_use_case=EstimateCoverageUseCase(),
    )
