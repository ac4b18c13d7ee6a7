from enum import StrEnum


class StateFeedback(StrEnum):
    ESTIMATE = "estimate"
    TRUTH = "truth"
