from dataclasses import dataclass


@dataclass(frozen=True)
class ControlInput:
    """Body-level command; wheel speeds follow from the differential-drive map."""

    v_cmd: float = 0.0
    omega_cmd: float = 0.0

    def wheel_speeds(self, track_width: float) -> tuple[float, float]:
        half = self.omega_cmd * track_width / 2.0
        return self.v_cmd - half, self.v_cmd + half

    def as_array(self):
        return self.v_cmd, self.omega_cmd
