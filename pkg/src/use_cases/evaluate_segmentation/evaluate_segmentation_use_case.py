from pathlib import Path

import pandas as pd

from configuration import pipeline_logger
from domain.DatasetLayout import DatasetLayout
from domain.EvaluationReport import EvaluationReport
from domain.InstanceMap import InstanceMap
from domain.SemanticMap import SemanticMap
from domain.errors import AmtuError, MissingPair
from ports.repositories.dataset_repository import DatasetRepository
from ports.services.segmentation_evaluation_service import SegmentationEvaluationService


def label_frames(directory: Path) -> set[str]:
    """Frame keys (relative path without the label suffix) of every semantic map below directory."""
    suffix = DatasetLayout.SEMANTIC_SUFFIX
    return {
        path.relative_to(directory).as_posix()[: -len(suffix)] for path in Path(directory).rglob(f"*{suffix}")
    }


def label_paths(directory: Path, frame: str) -> tuple[Path, Path]:
    return (
        Path(directory, frame + DatasetLayout.SEMANTIC_SUFFIX),
        Path(directory, frame + DatasetLayout.INSTANCE_SUFFIX),
    )


def half_size(semantic: SemanticMap, instance: InstanceMap) -> tuple[SemanticMap, InstanceMap]:
    return SemanticMap(semantic.classes[::2, ::2], semantic.num_classes), InstanceMap(instance.ids[::2, ::2])


class EvaluateSegmentationUseCase:
    def __init__(self, evaluation_service: SegmentationEvaluationService, dataset_repository: DatasetRepository):
        self.evaluation_service = evaluation_service
        self.dataset_repository = dataset_repository

    def execute(
        self,
        pred_dir: Path,
        gt_dir: Path,
        num_classes: int,
        downsample: bool = False,
        report_dir: Path | None = None,
    ) -> EvaluationReport:
        """Scores every prediction whose semantic and instance maps both have a ground-truth counterpart.

        Predicted boxes take their confidence from an optional boxes.csv in pred_dir and score 1 otherwise.
        """
        pred_dir, gt_dir = Path(pred_dir), Path(gt_dir)
        prediction_frames, truth_frames = label_frames(pred_dir), label_frames(gt_dir)
        confidences = self.load_confidences(pred_dir)
        self.evaluation_service.reset(num_classes)

        frames, missing, invalid = [], sorted(prediction_frames ^ truth_frames), []
        for frame in sorted(prediction_frames & truth_frames):
            pred_paths, gt_paths = label_paths(pred_dir, frame), label_paths(gt_dir, frame)
            if not all(path.exists() for path in pred_paths + gt_paths):
                missing.append(frame)
                continue
            try:
                prediction = self.dataset_repository.load_label_maps(*pred_paths, num_classes)
                ground_truth = self.dataset_repository.load_label_maps(*gt_paths, num_classes)
                if downsample:
                    prediction, ground_truth = half_size(*prediction), half_size(*ground_truth)
                frames.append(
                    self.evaluation_service.add_pair(frame, prediction, ground_truth, confidences.get(frame))
                )
            except AmtuError as error:
                pipeline_logger.warning(f"Frame {frame} not evaluated: {error}")
                invalid.append(frame)

        for frame in missing:
            pipeline_logger.warning(f"Missing pair for {frame}")
        if not frames:
            raise MissingPair(f"No pairs matched between {pred_dir} and {gt_dir}")

        report = EvaluationReport(
            aggregate=self.evaluation_service.aggregate(), frames=frames, missing=missing, invalid=invalid
        )
        pipeline_logger.info(report.aggregate.summary())
        if report_dir is not None:
            self.write_report(Path(report_dir), report)
        return report

    def load_confidences(self, pred_dir: Path) -> dict[str, dict[int, float]]:
        table = self.dataset_repository.load_table(
            Path(pred_dir, DatasetLayout.BOXES_2D), DatasetLayout.BOXES_2D_COLUMNS
        )
        confidences: dict[str, dict[int, float]] = {}
        for row in table.itertuples(index=False):
            confidences.setdefault(str(row.frame), {})[int(row.instance)] = float(row.confidence)
        return confidences

    def write_report(self, report_dir: Path, report: EvaluationReport):
        report_path = self.dataset_repository.save_text(report_dir / DatasetLayout.EVALUATION_REPORT, report.to_text())
        rows = [
            [frame.frame, box.x1, box.y1, box.x2, box.y2, box.c, box.instance_id, confidence]
            for frame in report.frames
            for box, confidence in self.evaluation_service.predicted_boxes(frame.frame)
        ]
        boxes_path = self.dataset_repository.save_table(
            report_dir / DatasetLayout.BOXES_2D, pd.DataFrame(rows, columns=DatasetLayout.BOXES_2D_COLUMNS)
        )
        pipeline_logger.info(f"Wrote {report_path}")
        pipeline_logger.info(f"Wrote {boxes_path}")
