from pydantic import BaseModel

from configuration import STAGE_BUDGET_MS
from domain.StageTiming import StageTiming


class PipelineSummary(BaseModel):
    mode: str
    frames: int = 0
    skipped_frames: int = 0
    control_cycles: int = 0
    duration: float = 0.0
    path_length: float = 0.0
    final_drift: float | None = None
    drift_fraction: float | None = None
    cross_track_rms: float | None = None
    final_cross_track: float | None = None
    route_completed: bool = False
    stage_timing: dict[str, StageTiming] = {}
    artifacts: list[str] = []

    def report(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"frames: {self.frames} processed, {self.skipped_frames} skipped",
            f"control cycles: {self.control_cycles} over {self.duration:.2f} s",
            f"path length: {self.path_length:.3f} m",
        ]
        if self.final_drift is not None:
            lines.append(f"final drift: {self.final_drift:.3f} m ({100 * (self.drift_fraction or 0.0):.2f}% of path)")
        if self.cross_track_rms is not None:
            lines.append(f"cross-track: rms {self.cross_track_rms:.3f} m, final {self.final_cross_track:.3f} m")
        lines.append(f"route completed: {'yes' if self.route_completed else 'no'}")
        lines.append(f"stage timing against the {STAGE_BUDGET_MS:.0f} ms budget:")
        for stage, timing in self.stage_timing.items():
            lines.append(
                f"  {stage}: median {timing.median_ms:.1f} ms, p90 {timing.p90_ms:.1f} ms, p99 {timing.p99_ms:.1f} ms, "
                f"max {timing.max_ms:.1f} ms, {timing.over_budget}/{timing.samples} over budget"
            )
        return "\n".join(lines) + "\n"
