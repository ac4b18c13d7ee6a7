import numpy as np
from pydantic import BaseModel

from configuration import STAGE_BUDGET_MS


class StageTiming(BaseModel):
    samples: int = 0
    median_ms: float = 0.0
    p90_ms: float = 0.0
    p99_ms: float = 0.0
    max_ms: float = 0.0
    over_budget: int = 0

    @staticmethod
    def from_samples(durations_ms: list[float], budget_ms: float = STAGE_BUDGET_MS):
        if not durations_ms:
            return StageTiming()
        values = np.asarray(durations_ms, dtype=float)
        median, p90, p99 = np.percentile(values, [50, 90, 99])
        return StageTiming(
            samples=len(values),
            median_ms=float(median),
            p90_ms=float(p90),
            p99_ms=float(p99),
            max_ms=float(values.max()),
            over_budget=int(np.sum(values > budget_ms)),
        )
