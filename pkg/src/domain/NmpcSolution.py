from dataclasses import dataclass, field

import numpy as np

from domain.ControlInput import ControlInput


@dataclass
class NmpcSolution:
    inputs: np.ndarray
    states: np.ndarray
    cost: float
    iterations: int = 0
    cost_history: list[float] = field(default_factory=list)

    @property
    def first_input(self) -> ControlInput:
        return ControlInput(float(self.inputs[0, 0]), float(self.inputs[0, 1]))
