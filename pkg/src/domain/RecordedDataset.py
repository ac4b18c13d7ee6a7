from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from domain.DatasetLayout import DatasetLayout
from domain.DatasetManifest import DatasetManifest


@dataclass
class RecordedDataset:
    """A finished recording; root is None when nothing was written to disk."""

    root: Path | None
    manifest: DatasetManifest
    truth: pd.DataFrame = field(default_factory=lambda: pd.DataFrame(columns=DatasetLayout.POSE_COLUMNS))

    @property
    def frame_count(self) -> int:
        return self.manifest.frame_count
