from pydantic import BaseModel, Field


class OutputConfig(BaseModel):
    annotated_frames: bool = True
    annotated_frame_stride: int = Field(1, ge=1)
    grid_snapshot_stride: int = Field(10, ge=1)
    planner_dumps: bool = True
    boxes: bool = True
    plots: bool = True
    timing_column: bool = False
