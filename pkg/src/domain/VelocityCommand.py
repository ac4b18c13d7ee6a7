from dataclasses import dataclass


@dataclass(frozen=True)
class VelocityCommand:
    v: float
    omega: float

    def within(self, v_max: float, omega_max: float) -> bool:
        return abs(self.v) <= v_max and abs(self.omega) <= omega_max
