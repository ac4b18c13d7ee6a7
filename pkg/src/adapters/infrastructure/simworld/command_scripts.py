import math
from abc import ABC, abstractmethod

from adapters.infrastructure.geometry.unicycle import wrap_angle
from domain.ControlInput import ControlInput
from domain.GpsFix import GpsFix
from domain.ImuSample import ImuSample
from domain.ReferenceTrajectory import ReferenceTrajectory
from domain.SensorFrame import SensorFrame
from domain.SimState import SimState


class CommandScript(ABC):
    """Drives the simulated platform. Sensor hooks are called in time order before the next command."""

    @abstractmethod
    def command(self, sim: SimState) -> ControlInput:
        pass

    def finished(self, sim: SimState) -> bool:
        return False

    def observe_truth(self, sim: SimState):
        pass

    def observe_frame(self, frame: SensorFrame):
        pass

    def observe_imu(self, imu: ImuSample, dt: float):
        pass

    def observe_gps(self, fix: GpsFix):
        pass


class ConstantCommandScript(CommandScript):
    def __init__(self, control: ControlInput):
        self.control = control

    def command(self, sim: SimState) -> ControlInput:
        return self.control


class RouteFollowingScript(CommandScript):
    """Pure pursuit on the ground-truth pose; stops at the end of an open route."""

    def __init__(self, route: ReferenceTrajectory, speed: float = 1.0, lookahead: float = 1.5, omega_max: float = 1.0):
        self.route = route
        self.speed = speed
        self.lookahead = lookahead
        self.omega_max = omega_max

    def finished(self, sim: SimState) -> bool:
        return not self.route.closed and self.route.project((sim.x, sim.y)) >= self.route.length - 1e-6

    def command(self, sim: SimState) -> ControlInput:
        if self.finished(sim):
            return ControlInput(0.0, 0.0)
        target = self.route.lookahead_point((sim.x, sim.y), self.lookahead)
        dx, dy = target[0] - sim.x, target[1] - sim.y
        distance = math.hypot(dx, dy)
        if distance < 1e-9:
            return ControlInput(0.0, 0.0)
        alpha = wrap_angle(math.atan2(dy, dx) - sim.yaw)
        omega = 2.0 * self.speed * math.sin(alpha) / distance
        return ControlInput(self.speed, max(-self.omega_max, min(self.omega_max, omega)))
